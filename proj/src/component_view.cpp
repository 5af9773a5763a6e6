#include "dyner/component_view.hpp"

#include <stdexcept>

namespace dyner {

void ComponentView::count_insert(std::uint32_t size) { size_counts_[size]++; }

void ComponentView::count_erase(std::uint32_t size) {
    auto it = size_counts_.find(size);
    if (--(it->second) == 0) size_counts_.erase(it);
}

void ComponentView::rebuild(const Configuration& config) {
    const Vertex n = config.vertex_count();
    comp_.assign(static_cast<std::size_t>(n) + 1, 0);
    comp_size_.assign(static_cast<std::size_t>(n) + 1, 0);
    size_counts_.clear();
    stamp_.assign(static_cast<std::size_t>(n) + 1, 0);
    epoch_ = 0;
    queue_.clear();
    queue_.reserve(n);

    for (Vertex root = 1; root <= n; ++root) {
        if (comp_[root] != 0) continue;
        queue_.clear();
        queue_.push_back(root);
        comp_[root] = root;
        std::size_t head = 0;
        while (head < queue_.size()) {
            const Vertex x = queue_[head++];
            for (Vertex y : config.neighbors(x)) {
                if (comp_[y] == 0) {
                    comp_[y] = root;
                    queue_.push_back(y);
                }
            }
        }
        comp_size_[root] = static_cast<std::uint32_t>(queue_.size());
        count_insert(comp_size_[root]);
    }
}

ComponentView components(const Configuration& config) {
    ComponentView view;
    view.rebuild(config);
    return view;
}

std::uint32_t ComponentView::relabel_from(const Configuration& config, Vertex root,
                                          Vertex old_id, Vertex new_id) {
    scratch_visited_.clear();
    queue_.clear();
    queue_.push_back(root);
    comp_[root] = new_id;
    std::size_t head = 0;
    while (head < queue_.size()) {
        const Vertex x = queue_[head++];
        scratch_visited_.push_back(x);
        for (Vertex y : config.neighbors(x)) {
            if (comp_[y] == old_id) {
                comp_[y] = new_id;
                queue_.push_back(y);
            }
        }
    }
    return static_cast<std::uint32_t>(scratch_visited_.size());
}

void ComponentView::merge(const Configuration& config, Vertex u, Vertex v) {
    const Vertex ru = comp_[u];
    const Vertex rv = comp_[v];
    if (ru == rv) return;  // edge inside one component, partition unchanged
    const std::uint32_t su = comp_size_[ru];
    const std::uint32_t sv = comp_size_[rv];
    // Relabel the smaller side; its old id stays distinct from the target id
    // so the new edge is not followed back.
    const Vertex from = (su <= sv) ? u : v;
    const Vertex small_id = (su <= sv) ? ru : rv;
    const Vertex big_id = (su <= sv) ? rv : ru;
    relabel_from(config, from, small_id, big_id);
    count_erase(su);
    count_erase(sv);
    comp_size_[big_id] = su + sv;
    count_insert(su + sv);
}

void ComponentView::split_or_keep(const Configuration& config, Vertex u, Vertex v) {
    const Vertex old_id = comp_[u];
    const std::uint32_t old_size = comp_size_[old_id];

    // Traverse from u (adjacency already excludes the deleted edge); if v is
    // reached the edge was not a bridge.
    if (++epoch_ == 0) {
        stamp_.assign(stamp_.size(), 0);
        epoch_ = 1;
    }
    queue_.clear();
    queue_.push_back(u);
    stamp_[u] = epoch_;
    bool found_v = false;
    std::size_t head = 0;
    while (head < queue_.size() && !found_v) {
        const Vertex x = queue_[head++];
        for (Vertex y : config.neighbors(x)) {
            if (y == v) {
                found_v = true;
                break;
            }
            if (stamp_[y] != epoch_) {
                stamp_[y] = epoch_;
                queue_.push_back(y);
            }
        }
    }
    if (found_v) return;

    // Bridge: the visited set is the new component of u. Relabel it to u;
    // if the old label migrated into u's side, relabel v's side to v so
    // every label stays a member of its component.
    bool old_id_with_u = false;
    for (Vertex x : queue_) {
        if (x == old_id) old_id_with_u = true;
        comp_[x] = u;
    }
    const std::uint32_t size_u = static_cast<std::uint32_t>(queue_.size());
    const std::uint32_t size_v = old_size - size_u;
    Vertex v_id = old_id;
    if (old_id_with_u) {
        relabel_from(config, v, old_id, v);
        v_id = v;
    }
    count_erase(old_size);
    comp_size_[u] = size_u;
    comp_size_[v_id] = size_v;
    count_insert(size_u);
    count_insert(size_v);
}

void apply_flip(Configuration& config, ComponentView& view, EdgeSlot slot, bool new_state) {
    if (config.has(slot) == new_state)
        throw std::logic_error("apply_flip: new_state equals current state");
    const auto [u, v] = config.space().edge_pair(slot);
    if (new_state) {
        config.insert(slot);
        view.merge(config, u, v);
    } else {
        config.erase(slot);
        view.split_or_keep(config, u, v);
    }
}

bool ComponentView::same_partition(const ComponentView& other) const {
    if (comp_.size() != other.comp_.size()) return false;
    if (size_counts_ != other.size_counts_) return false;
    // Labels may differ; require a consistent bijection between them.
    std::map<Vertex, Vertex> fwd, bwd;
    for (Vertex x = 1; x < comp_.size(); ++x) {
        const Vertex a = comp_[x];
        const Vertex b = other.comp_[x];
        auto [fit, fnew] = fwd.emplace(a, b);
        if (!fnew && fit->second != b) return false;
        auto [bit, bnew] = bwd.emplace(b, a);
        if (!bnew && bit->second != a) return false;
    }
    return true;
}

}  // namespace dyner
