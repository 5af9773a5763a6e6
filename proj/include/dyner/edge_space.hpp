// Canonical indexing of the n(n-1)/2 potential edges of the complete graph
// on vertices 1..n. Slots are 0-based and ordered lexicographically by
// (u, v) with u < v.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace dyner {

using Vertex = std::uint32_t;
using EdgeSlot = std::uint64_t;

struct EdgeSpace {
    Vertex n = 0;

    explicit EdgeSpace(Vertex vertex_count) : n(vertex_count) {
        if (n < 1) throw std::invalid_argument("EdgeSpace: n must be >= 1");
    }

    std::uint64_t slot_count() const {
        return static_cast<std::uint64_t>(n) * (n - 1) / 2;
    }

    // Number of slots preceding row u, i.e. the index of edge (u, u+1).
    std::uint64_t row_offset(Vertex u) const {
        const std::uint64_t u64 = u;
        return (u64 - 1) * (2ULL * n - u64) / 2;
    }

    EdgeSlot edge_index(Vertex u, Vertex v) const {
        if (u < 1 || u >= v || v > n)
            throw std::invalid_argument("edge_index: need 1 <= u < v <= n");
        return row_offset(u) + (v - u - 1);
    }

    std::pair<Vertex, Vertex> edge_pair(EdgeSlot slot) const {
        if (slot >= slot_count()) throw std::invalid_argument("edge_pair: slot out of range");
        // Invert row_offset(u) <= slot: solve the quadratic and correct for
        // floating-point rounding.
        const double s = static_cast<double>(slot);
        const double tn = 2.0 * static_cast<double>(n) + 1.0;
        double guess = (tn - std::sqrt(tn * tn - 8.0 * (static_cast<double>(n) + s))) / 2.0;
        Vertex u = static_cast<Vertex>(guess);
        if (u < 1) u = 1;
        while (u > 1 && row_offset(u) > slot) --u;
        while (u < n - 1 && row_offset(u + 1) <= slot) ++u;
        const Vertex v = static_cast<Vertex>(slot - row_offset(u)) + u + 1;
        return {u, v};
    }
};

// Decodes a stream of ascending slots into vertex pairs by walking the row
// pointer forward; amortized O(1) per slot, no floating point.
class AscendingEdgeDecoder {
  public:
    explicit AscendingEdgeDecoder(const EdgeSpace& space)
        : space_(space), base_(0), next_(space.n >= 2 ? space.row_offset(2) : 0) {}

    std::pair<Vertex, Vertex> decode(EdgeSlot slot) {
        while (slot >= next_) {
            ++u_;
            base_ = next_;
            next_ = space_.row_offset(u_ + 1);
        }
        return {u_, static_cast<Vertex>(slot - base_) + u_ + 1};
    }

  private:
    EdgeSpace space_;
    Vertex u_ = 1;
    std::uint64_t base_;
    std::uint64_t next_;
};

}  // namespace dyner
