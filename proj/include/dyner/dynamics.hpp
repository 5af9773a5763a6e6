// Event-driven simulation of the dynamical Erdős–Rényi graph: every
// potential edge is resampled at rate 1 (turned on with probability p = 1/n,
// off otherwise), keeping ER(n, 1/n) stationary. Also houses the one-shot
// eps-resampling kernel and trajectory statistics.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dyner/component_view.hpp"
#include "dyner/configuration.hpp"
#include "dyner/random.hpp"

namespace dyner::dynamics {

struct TrajectoryEvent {
    double time;
    EdgeSlot slot;
    bool new_state;
};

struct PathPoint {
    double time;
    std::uint32_t value;
};

struct TrajectoryRecord {
    Vertex n = 0;
    double horizon = 0.0;
    std::vector<TrajectoryEvent> events;        // effective events only
    std::vector<PathPoint> largest_path;        // starts at t = 0
    std::vector<Vertex> probes;
    std::vector<std::vector<PathPoint>> probe_paths;  // parallel to probes

    std::uint64_t effective_event_count() const { return events.size(); }
    std::uint32_t largest_at(double t) const;
    std::uint32_t sup_largest() const;
    // Index into probes, or throws if v was not probed.
    std::size_t probe_index(Vertex v) const;
};

// Runs the process on [0, horizon] from a fresh ER(n, 1/n) start.
//
// Realization: two thinned event streams. Candidate on-events arrive at rate
// n(n-1)/2 * p, pick a uniform slot and act only if it is absent; off-events
// arrive at rate |present| * (1-p) and turn off a uniformly chosen present
// edge. Per edge this is off->on at rate p and on->off at rate 1-p, the
// exact law, with O(n) events per unit time instead of O(n^2) clocks.
TrajectoryRecord simulate_trajectory(Vertex n, double horizon, Rng& rng,
                                     std::span<const Vertex> probes = {});

struct ExceptionalSet {
    std::uint32_t threshold = 0;
    double delta = 0.0;
    std::vector<std::pair<double, double>> intervals;  // disjoint, sorted, half-open
    double measure = 0.0;
    std::uint64_t switch_count = 0;  // boundary crossings strictly inside (0, delta)
};

// Times where the largest component is >= threshold, from the trajectory's
// piecewise-constant largest path.
ExceptionalSet exceptional_set(const TrajectoryRecord& traj, std::uint32_t threshold,
                               double delta);

// Integer size window [lo, hi], both ends inclusive.
struct SizeInterval {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    bool contains(std::uint64_t s) const { return lo <= s && s <= hi; }
};

struct ZStatistics {
    double z_u = 0.0;
    double z_v = 0.0;
    double z_uv = 0.0;
    double z_u_sq = 0.0;
};

// Occupation times of the window I by the probes' component sizes:
// Z_w = integral over [0, horizon] of 1{|C_w(t)| in I} dt, plus the
// products Z_u*Z_v and Z_u^2.
ZStatistics z_statistics(const TrajectoryRecord& traj, SizeInterval interval, Vertex u,
                         Vertex v);

// Resampling kernel: each slot is rerandomized independently with
// probability eps (to on with probability p, off otherwise).
// Input slots must be sorted ascending; output is sorted ascending.
std::vector<EdgeSlot> resample_slots(std::span<const EdgeSlot> present_sorted,
                                     std::uint64_t slot_count, double eps, double p,
                                     Rng& rng);

// Same kernel on a full Configuration.
Configuration resample_configuration(const Configuration& config, double eps, double p,
                                     Rng& rng);

}  // namespace dyner::dynamics
