#include "dyner/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace dyner::dynamics {

std::uint32_t TrajectoryRecord::largest_at(double t) const {
    // Last breakpoint with time <= t.
    auto it = std::upper_bound(largest_path.begin(), largest_path.end(), t,
                               [](double x, const PathPoint& p) { return x < p.time; });
    return std::prev(it)->value;
}

std::uint32_t TrajectoryRecord::sup_largest() const {
    std::uint32_t best = 0;
    for (const auto& p : largest_path) best = std::max(best, p.value);
    return best;
}

std::size_t TrajectoryRecord::probe_index(Vertex v) const {
    for (std::size_t i = 0; i < probes.size(); ++i)
        if (probes[i] == v) return i;
    throw std::invalid_argument("TrajectoryRecord: vertex was not probed");
}

TrajectoryRecord simulate_trajectory(Vertex n, double horizon, Rng& rng,
                                     std::span<const Vertex> probes) {
    if (n < 2) throw std::invalid_argument("simulate_trajectory: n must be >= 2");
    if (horizon <= 0.0) throw std::invalid_argument("simulate_trajectory: horizon must be > 0");

    const double p = 1.0 / static_cast<double>(n);
    Configuration config = sample_er(n, p, rng);
    ComponentView view = components(config);
    const double slot_count = static_cast<double>(config.space().slot_count());
    const double on_candidate_rate = slot_count * p;  // = (n-1)/2

    TrajectoryRecord traj;
    traj.n = n;
    traj.horizon = horizon;
    traj.probes.assign(probes.begin(), probes.end());
    traj.probe_paths.resize(probes.size());
    traj.largest_path.push_back({0.0, view.largest()});
    for (std::size_t i = 0; i < probes.size(); ++i)
        traj.probe_paths[i].push_back({0.0, view.component_size(probes[i])});

    double t = 0.0;
    for (;;) {
        const double off_rate =
            static_cast<double>(config.edge_count()) * (1.0 - p);
        const double total_rate = on_candidate_rate + off_rate;
        t += exponential(rng, total_rate);
        if (t >= horizon) break;

        if (uniform_open01(rng) * total_rate < on_candidate_rate) {
            const EdgeSlot slot = uniform_below(rng, config.space().slot_count());
            if (config.has(slot)) continue;  // thinned: resample-to-on of a present edge
            apply_flip(config, view, slot, true);
            traj.events.push_back({t, slot, true});
        } else {
            const std::size_t idx =
                static_cast<std::size_t>(uniform_below(rng, config.edge_count()));
            const EdgeSlot slot = config.present_at(idx);
            apply_flip(config, view, slot, false);
            traj.events.push_back({t, slot, false});
        }

        const std::uint32_t largest = view.largest();
        if (largest != traj.largest_path.back().value)
            traj.largest_path.push_back({t, largest});
        for (std::size_t i = 0; i < traj.probes.size(); ++i) {
            const std::uint32_t s = view.component_size(traj.probes[i]);
            if (s != traj.probe_paths[i].back().value)
                traj.probe_paths[i].push_back({t, s});
        }
    }
    return traj;
}

ExceptionalSet exceptional_set(const TrajectoryRecord& traj, std::uint32_t threshold,
                               double delta) {
    if (threshold < 1) throw std::invalid_argument("exceptional_set: threshold must be >= 1");
    if (delta <= 0.0 || delta > traj.horizon)
        throw std::invalid_argument("exceptional_set: delta outside (0, horizon]");

    ExceptionalSet out;
    out.threshold = threshold;
    out.delta = delta;

    bool open = false;
    double start = 0.0;
    for (const auto& pt : traj.largest_path) {
        const bool above = pt.value >= threshold;
        if (above && !open) {
            open = true;
            start = pt.time;
        } else if (!above && open) {
            open = false;
            out.intervals.emplace_back(start, pt.time);
        }
    }
    if (open) out.intervals.emplace_back(start, traj.horizon);

    for (const auto& [s, e] : out.intervals) {
        out.measure += e - s;
        if (s > 0.0 && s < delta) out.switch_count++;
        if (e > 0.0 && e < delta) out.switch_count++;
    }
    return out;
}

namespace {

double occupation_time(const std::vector<PathPoint>& path, double horizon,
                       SizeInterval interval) {
    double total = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!interval.contains(path[i].value)) continue;
        const double end = (i + 1 < path.size()) ? path[i + 1].time : horizon;
        total += end - path[i].time;
    }
    return total;
}

}  // namespace

ZStatistics z_statistics(const TrajectoryRecord& traj, SizeInterval interval, Vertex u,
                         Vertex v) {
    const auto& path_u = traj.probe_paths[traj.probe_index(u)];
    const auto& path_v = traj.probe_paths[traj.probe_index(v)];
    ZStatistics z;
    z.z_u = occupation_time(path_u, traj.horizon, interval);
    z.z_v = occupation_time(path_v, traj.horizon, interval);
    z.z_uv = z.z_u * z.z_v;
    z.z_u_sq = z.z_u * z.z_u;
    return z;
}

std::vector<EdgeSlot> resample_slots(std::span<const EdgeSlot> present_sorted,
                                     std::uint64_t slot_count, double eps, double p,
                                     Rng& rng) {
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("resample_slots: eps outside [0,1]");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("resample_slots: p outside [0,1]");

    // Present edges survive with probability 1 - eps(1-p): kept outright with
    // probability 1-eps, or resampled back to on with probability eps*p.
    std::vector<EdgeSlot> survivors;
    survivors.reserve(present_sorted.size());
    const double survive = 1.0 - eps * (1.0 - p);
    for (EdgeSlot s : present_sorted)
        if (bernoulli(rng, survive)) survivors.push_back(s);

    // Absent slots turn on with probability eps*p. Skip-sample the whole slot
    // range at that rate and keep the hits that were absent.
    std::vector<EdgeSlot> fresh;
    skip_sample(rng, slot_count, eps * p, [&](EdgeSlot s) {
        if (!std::binary_search(present_sorted.begin(), present_sorted.end(), s))
            fresh.push_back(s);
    });

    std::vector<EdgeSlot> out;
    out.reserve(survivors.size() + fresh.size());
    std::merge(survivors.begin(), survivors.end(), fresh.begin(), fresh.end(),
               std::back_inserter(out));
    return out;
}

Configuration resample_configuration(const Configuration& config, double eps, double p,
                                     Rng& rng) {
    const std::vector<EdgeSlot> present = config.sorted_slots();
    const std::vector<EdgeSlot> next =
        resample_slots(present, config.space().slot_count(), eps, p, rng);
    return Configuration::from_slots(config.vertex_count(), next);
}

}  // namespace dyner::dynamics
