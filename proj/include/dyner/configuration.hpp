// One instant of the graph: the set of present edges plus mirrored
// adjacency lists. The present-edge list supports O(1) membership,
// insertion, swap-removal and uniform sampling, which the event-driven
// dynamics relies on.

#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "dyner/edge_space.hpp"
#include "dyner/random.hpp"

namespace dyner {

class Configuration {
  public:
    explicit Configuration(Vertex n);

    // Builds a configuration from slots sorted in ascending order.
    static Configuration from_slots(Vertex n, std::span<const EdgeSlot> slots);

    const EdgeSpace& space() const { return space_; }
    Vertex vertex_count() const { return space_.n; }
    std::uint64_t edge_count() const { return present_.size(); }

    bool has(EdgeSlot slot) const { return position_.find(slot) != position_.end(); }
    void insert(EdgeSlot slot);
    void erase(EdgeSlot slot);

    // Present edges in arbitrary (insertion/swap) order.
    const std::vector<EdgeSlot>& present() const { return present_; }
    EdgeSlot present_at(std::size_t index) const { return present_[index]; }

    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }

    // Present slots sorted ascending (copies).
    std::vector<EdgeSlot> sorted_slots() const;

  private:
    EdgeSpace space_;
    std::vector<EdgeSlot> present_;
    std::unordered_map<EdgeSlot, std::uint32_t> position_;
    std::vector<std::vector<Vertex>> adjacency_;  // 1-based; index 0 unused
};

// Samples ER(n, p): every slot present independently with probability p.
// Touches O(p * n^2) slots in expectation via skip-sampling.
Configuration sample_er(Vertex n, double p, Rng& rng);

// Calls fn(slot) for each present slot of a fresh ER(n, p) draw, in
// ascending slot order, without building a Configuration.
template <class Fn>
void sample_er_slots(Vertex n, double p, Rng& rng, Fn&& fn) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_er: p outside [0,1]");
    const EdgeSpace space(n);
    skip_sample(rng, space.slot_count(), p, fn);
}

}  // namespace dyner
