#include "dyner/revealment.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "dyner/stats.hpp"

namespace dyner::revealment {

namespace {

struct MaskOracle {
    std::uint32_t mask;
    bool operator()(EdgeSlot s) const { return (mask >> s) & 1u; }
};

// Component sizes of a mask-encoded graph on n vertices via a small
// union-find; returns the size of the component containing v.
std::uint32_t mask_component_size(std::uint32_t mask, Vertex n,
                                  std::span<const std::pair<Vertex, Vertex>> pairs, Vertex v) {
    std::array<Vertex, 8> parent{};
    std::array<std::uint32_t, 8> size{};
    for (Vertex x = 1; x <= n; ++x) {
        parent[x] = x;
        size[x] = 1;
    }
    auto find = [&](Vertex x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::uint32_t b = 0; b < pairs.size(); ++b) {
        if (((mask >> b) & 1u) == 0) continue;
        Vertex ra = find(pairs[b].first);
        Vertex rb = find(pairs[b].second);
        if (ra == rb) continue;
        if (size[ra] < size[rb]) std::swap(ra, rb);
        parent[rb] = ra;
        size[ra] += size[rb];
    }
    return size[find(v)];
}

std::vector<std::pair<Vertex, Vertex>> slot_pairs(Vertex n) {
    const EdgeSpace space(n);
    std::vector<std::pair<Vertex, Vertex>> pairs(space.slot_count());
    for (EdgeSlot s = 0; s < space.slot_count(); ++s) pairs[s] = space.edge_pair(s);
    return pairs;
}

}  // namespace

RevealmentExact revealment_exact(Vertex n, double p, Vertex v, std::uint32_t N) {
    if (n > 7) throw std::invalid_argument("revealment_exact: n must be <= 7");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("revealment_exact: bad p");
    const EdgeSpace space(n);
    const std::uint32_t m = static_cast<std::uint32_t>(space.slot_count());

    RevealmentExact out;
    out.edge_probability.assign(m, 0.0);
    std::vector<Vertex> list;
    list.reserve(n);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        const int ones = std::popcount(mask);
        const double weight =
            std::pow(p, ones) * std::pow(1.0 - p, static_cast<int>(m) - ones);
        if (weight == 0.0) continue;
        MaskOracle oracle{mask};
        bfs_reveal_visit(oracle, v, N, n, list, [&](EdgeSlot slot, bool) {
            out.edge_probability[slot] += weight;
        });
    }
    const std::uint32_t hub = hub_mask(n, v);
    for (std::uint32_t s = 0; s < m; ++s)
        if ((hub & (1u << s)) == 0)
            out.revealment_off_hub = std::max(out.revealment_off_hub, out.edge_probability[s]);
    return out;
}

RevealReplica reveal_one_replica(Vertex n, double p, Vertex v, std::uint32_t N,
                                 std::uint64_t seed, std::vector<std::uint32_t>* edge_counts) {
    Rng rng(seed);
    std::vector<EdgeSlot> slots;
    sample_er_slots(n, p, rng, [&](EdgeSlot s) { slots.push_back(s); });

    const EdgeSpace space(n);
    const std::uint64_t hub_lo = space.row_offset(v);  // slots (v, w) for w > v
    const std::uint64_t hub_hi = hub_lo + (n - v);

    SortedSlotOracle oracle{slots};
    RevealReplica rep;
    std::vector<Vertex> list;
    rep.decision = bfs_reveal_visit(oracle, v, N, n, list, [&](EdgeSlot slot, bool) {
        // Edges (u, v) with u < v live at row u's offset + (v - u - 1).
        bool at_hub = slot >= hub_lo && slot < hub_hi;
        if (!at_hub && v > 1) {
            const auto [a, b] = space.edge_pair(slot);
            at_hub = (a == v) || (b == v);
        }
        if (at_hub)
            rep.hub_queried++;
        else
            rep.off_hub_queried++;
        if (edge_counts) (*edge_counts)[slot]++;
    });
    return rep;
}

RevealmentEstimate revealment_estimate(Vertex n, double p, Vertex v, std::uint32_t N,
                                       std::uint64_t reps, Rng& rng, bool per_edge) {
    if (reps < 1) throw std::invalid_argument("revealment_estimate: reps must be >= 1");
    const EdgeSpace space(n);
    const std::uint64_t m = space.slot_count();
    const std::uint64_t hub_count = n - 1;
    const std::uint64_t off_count = m - hub_count;

    std::vector<std::uint32_t> counts;
    if (per_edge) counts.assign(m, 0);

    RevealmentEstimate est;
    est.replicas = reps;
    std::vector<double> off_fractions(reps);
    double hub_total = 0.0, decision_total = 0.0;
    for (std::uint64_t r = 0; r < reps; ++r) {
        const std::uint64_t seed = rng();
        const RevealReplica rep =
            reveal_one_replica(n, p, v, N, seed, per_edge ? &counts : nullptr);
        hub_total += rep.hub_queried;
        decision_total += rep.decision ? 1.0 : 0.0;
        off_fractions[r] =
            off_count > 0 ? static_cast<double>(rep.off_hub_queried) / off_count : 0.0;
    }
    const auto off = stats::moments(off_fractions);
    est.off_hub_frequency = off.mean;
    est.off_hub_stderr = off.stderr_of_mean;
    est.hub_frequency = hub_total / (static_cast<double>(reps) * hub_count);
    est.decision_frequency = decision_total / static_cast<double>(reps);
    if (per_edge) {
        est.edge_frequency.resize(m);
        for (std::uint64_t s = 0; s < m; ++s)
            est.edge_frequency[s] = counts[s] / static_cast<double>(reps);
    }
    return est;
}

std::uint32_t hub_mask(Vertex n, Vertex v) {
    const EdgeSpace space(n);
    if (space.slot_count() > spectral::kMaxBits)
        throw std::invalid_argument("hub_mask: edge set exceeds 25 bits");
    std::uint32_t mask = 0;
    for (Vertex w = 1; w <= n; ++w) {
        if (w == v) continue;
        const EdgeSlot s = w < v ? space.edge_index(w, v) : space.edge_index(v, w);
        mask |= 1u << s;
    }
    return mask;
}

spectral::FunctionTable component_indicator_table(Vertex n, std::uint32_t N, double p,
                                                  Vertex v) {
    const EdgeSpace space(n);
    if (space.slot_count() > spectral::kMaxBits)
        throw std::invalid_argument("component_indicator_table: edge set exceeds 25 bits");
    const auto pairs = slot_pairs(n);
    const std::uint32_t m = static_cast<std::uint32_t>(space.slot_count());
    std::vector<double> values(1ull << m);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask)
        values[mask] = mask_component_size(mask, n, pairs, v) >= N ? 1.0 : 0.0;
    return spectral::FunctionTable(m, p, std::move(values));
}

}  // namespace dyner::revealment
