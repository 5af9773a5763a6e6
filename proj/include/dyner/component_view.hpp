// Exact connected-component bookkeeping over a Configuration, with a size
// multiset and O(1) largest-component query. Kept in lockstep with the
// configuration by apply_flip.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dyner/configuration.hpp"

namespace dyner {

class ComponentView {
  public:
    ComponentView() = default;

    Vertex component_id(Vertex v) const { return comp_[v]; }
    std::uint32_t component_size(Vertex v) const { return comp_size_[comp_[v]]; }
    std::uint32_t largest() const { return size_counts_.rbegin()->first; }

    // size -> number of components of that size; sizes sum to n.
    const std::map<std::uint32_t, std::uint32_t>& size_counts() const { return size_counts_; }

    bool same_partition(const ComponentView& other) const;

    friend ComponentView components(const Configuration& config);
    friend void apply_flip(Configuration& config, ComponentView& view, EdgeSlot slot,
                           bool new_state);

  private:
    void rebuild(const Configuration& config);
    void merge(const Configuration& config, Vertex u, Vertex v);
    void split_or_keep(const Configuration& config, Vertex u, Vertex v);
    // Relabels the component reachable from root (per current adjacency,
    // restricted to vertices currently labeled old_id) to new_id; returns
    // its size. Fills scratch_visited_ with the members.
    std::uint32_t relabel_from(const Configuration& config, Vertex root, Vertex old_id,
                               Vertex new_id);
    void count_insert(std::uint32_t size);
    void count_erase(std::uint32_t size);

    std::vector<Vertex> comp_;               // component label per vertex (a member vertex)
    std::vector<std::uint32_t> comp_size_;   // size per label, valid at labels only
    std::map<std::uint32_t, std::uint32_t> size_counts_;

    // Reusable traversal scratch; epoch stamps avoid O(n) clears per flip.
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<Vertex> queue_;
    std::vector<Vertex> scratch_visited_;
};

// Exact partition by full traversal; O(n + |present|).
ComponentView components(const Configuration& config);

// Applies a single edge flip to both structures. new_state must differ from
// the current state. Insertion merges in time O(smaller side); deletion runs
// a traversal bounded by the affected component.
void apply_flip(Configuration& config, ComponentView& view, EdgeSlot slot, bool new_state);

}  // namespace dyner
