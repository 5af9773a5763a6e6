// Union-find with epoch-stamped lazy initialization: reset() is O(1), so a
// worker can reuse one instance across many Monte Carlo replicas without
// per-replica clears. Tracks the running maximum component size and the
// set of touched vertices for component enumeration.

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace dyner {

class EpochUnionFind {
  public:
    explicit EpochUnionFind(std::uint32_t n)
        : parent_(n + 1, 0), size_(n + 1, 0), stamp_(n + 1, 0) {}

    void reset() {
        if (++epoch_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            epoch_ = 1;
        }
        touched_.clear();
        max_size_ = 1;
    }

    std::uint32_t find(std::uint32_t x) {
        touch(x);
        std::uint32_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            const std::uint32_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        std::uint32_t ra = find(a);
        std::uint32_t rb = find(b);
        if (ra == rb) return;
        if (size_[ra] < size_[rb]) std::swap(ra, rb);
        parent_[rb] = ra;
        size_[ra] += size_[rb];
        if (size_[ra] > max_size_) max_size_ = size_[ra];
    }

    std::uint32_t component_size(std::uint32_t x) { return size_[find(x)]; }

    // Largest component size; singletons count as 1.
    std::uint32_t max_size() const { return max_size_; }

    // Calls fn(size) for every component that contains an edge. Untouched
    // vertices are singletons and are not enumerated.
    template <class Fn>
    void for_each_touched_component(Fn&& fn) {
        for (std::uint32_t v : touched_)
            if (parent_[v] == v) fn(size_[v]);
    }

  private:
    void touch(std::uint32_t x) {
        if (stamp_[x] != epoch_) {
            stamp_[x] = epoch_;
            parent_[x] = x;
            size_[x] = 1;
            touched_.push_back(x);
        }
    }

    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint32_t> touched_;
    std::uint32_t epoch_ = 0;
    std::uint32_t max_size_ = 1;
};

}  // namespace dyner
