// Breadth-first-search revealment algorithm for f_v = 1{|C_v| >= N}: the
// algorithm queries edge presence through an oracle, growing an ordered list
// of vertices known to lie in C_v, and decides f_v after revealing as few
// edges as it can manage. Exact and Monte Carlo revealment (per-edge query
// probabilities) are computed on top of it.

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "dyner/configuration.hpp"
#include "dyner/edge_space.hpp"
#include "dyner/random.hpp"
#include "dyner/spectral.hpp"

namespace dyner::revealment {

struct RevealTrace {
    bool decision = false;
    std::vector<EdgeSlot> revealed;  // query order, no duplicates
    std::uint64_t queries = 0;       // == revealed.size()
    std::vector<Vertex> final_list;  // prefix of the BFS order, size <= N
};

// Core loop shared by the trace-recording and counting variants.
//
// Steps are 1-based. At the start of step i: declare 1 if the list holds at
// least N vertices; declare 0 if it holds fewer than i (every listed vertex
// has been processed); otherwise process the i-th listed vertex, querying
// its edge to every currently unlisted vertex in ascending order and
// appending discovered neighbours. Appends stop once the list reaches N
// (the decision is already forced), but the current vertex's remaining
// queries still complete, so a step is always an all-or-nothing batch.
template <class Oracle, class OnQuery>
bool bfs_reveal_visit(Oracle&& oracle, Vertex v, std::uint32_t N, Vertex n,
                      std::vector<Vertex>& list, OnQuery&& on_query) {
    const EdgeSpace space(n);
    list.clear();
    list.push_back(v);
    std::vector<bool> listed(static_cast<std::size_t>(n) + 1, false);
    listed[v] = true;

    for (std::uint32_t step = 1;; ++step) {
        if (list.size() >= N) return true;
        if (list.size() < step) return false;
        const Vertex current = list[step - 1];
        for (Vertex w = 1; w <= n; ++w) {
            if (listed[w]) continue;
            const EdgeSlot slot =
                current < w ? space.edge_index(current, w) : space.edge_index(w, current);
            const bool present = oracle(slot);
            on_query(slot, present);
            if (present && list.size() < N) {
                list.push_back(w);
                listed[w] = true;
            }
        }
    }
}

template <class Oracle>
RevealTrace bfs_reveal(Oracle&& oracle, Vertex v, std::uint32_t N, Vertex n) {
    if (v < 1 || v > n) throw std::invalid_argument("bfs_reveal: vertex out of range");
    if (N < 1 || N > n) throw std::invalid_argument("bfs_reveal: N outside [1, n]");
    RevealTrace trace;
    trace.decision = bfs_reveal_visit(oracle, v, N, n, trace.final_list,
                                      [&](EdgeSlot slot, bool) { trace.revealed.push_back(slot); });
    trace.queries = trace.revealed.size();
    return trace;
}

// Oracle over a Configuration that logs every query it answers.
class ConfigurationOracle {
  public:
    explicit ConfigurationOracle(const Configuration& config) : config_(&config) {}
    bool operator()(EdgeSlot slot) {
        log_.push_back(slot);
        return config_->has(slot);
    }
    const std::vector<EdgeSlot>& queried() const { return log_; }

  private:
    const Configuration* config_;
    std::vector<EdgeSlot> log_;
};

// Oracle over an ascending slot list (binary search per query).
struct SortedSlotOracle {
    std::span<const EdgeSlot> slots;
    bool operator()(EdgeSlot s) const {
        return std::binary_search(slots.begin(), slots.end(), s);
    }
};

struct RevealmentExact {
    std::vector<double> edge_probability;  // P(e in J) per slot
    double revealment_off_hub = 0.0;       // max over edges not touching v
};

// Exact per-edge reveal probabilities by weighted enumeration of all
// 2^{n(n-1)/2} configurations; n <= 7.
RevealmentExact revealment_exact(Vertex n, double p, Vertex v, std::uint32_t N);

struct RevealmentEstimate {
    std::vector<double> edge_frequency;  // per slot; empty unless per_edge
    double hub_frequency = 0.0;          // pooled over edges incident to v
    double off_hub_frequency = 0.0;      // pooled over edges not touching v
    double off_hub_stderr = 0.0;         // from per-replica pooled fractions
    double decision_frequency = 0.0;
    std::uint64_t replicas = 0;
};

// Monte Carlo reveal frequencies over fresh ER(n, p) draws. Pooled orbit
// statistics (edges at v / edges off v) are always computed; the per-edge
// array is kept only when per_edge is set (it is O(n^2) memory).
RevealmentEstimate revealment_estimate(Vertex n, double p, Vertex v, std::uint32_t N,
                                       std::uint64_t reps, Rng& rng,
                                       bool per_edge = false);

// Single-replica kernel used by both revealment_estimate and the parallel
// experiment harness.
struct RevealReplica {
    std::uint32_t hub_queried = 0;
    std::uint32_t off_hub_queried = 0;
    bool decision = false;
};
RevealReplica reveal_one_replica(Vertex n, double p, Vertex v, std::uint32_t N,
                                 std::uint64_t seed,
                                 std::vector<std::uint32_t>* edge_counts = nullptr);

// Bitmask of edge slots incident to v; requires n(n-1)/2 <= 25.
std::uint32_t hub_mask(Vertex n, Vertex v);

// Truth table of 1{|C_v| >= N} over all configurations of K_n as a spectral
// FunctionTable; requires n(n-1)/2 <= 25.
spectral::FunctionTable component_indicator_table(Vertex n, std::uint32_t N, double p,
                                                  Vertex v = 1);

}  // namespace dyner::revealment
