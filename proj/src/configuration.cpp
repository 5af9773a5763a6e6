#include "dyner/configuration.hpp"

#include <algorithm>
#include <stdexcept>

namespace dyner {

Configuration::Configuration(Vertex n) : space_(n), adjacency_(static_cast<std::size_t>(n) + 1) {}

Configuration Configuration::from_slots(Vertex n, std::span<const EdgeSlot> slots) {
    Configuration cfg(n);
    cfg.present_.reserve(slots.size());
    for (EdgeSlot s : slots) cfg.insert(s);
    return cfg;
}

void Configuration::insert(EdgeSlot slot) {
    if (has(slot)) throw std::logic_error("Configuration::insert: slot already present");
    position_.emplace(slot, static_cast<std::uint32_t>(present_.size()));
    present_.push_back(slot);
    const auto [u, v] = space_.edge_pair(slot);
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
}

void Configuration::erase(EdgeSlot slot) {
    auto it = position_.find(slot);
    if (it == position_.end()) throw std::logic_error("Configuration::erase: slot not present");
    const std::uint32_t idx = it->second;
    const EdgeSlot last = present_.back();
    present_[idx] = last;
    present_.pop_back();
    if (last != slot) position_[last] = idx;
    position_.erase(it);
    const auto [u, v] = space_.edge_pair(slot);
    auto drop = [](std::vector<Vertex>& list, Vertex w) {
        auto pos = std::find(list.begin(), list.end(), w);
        *pos = list.back();
        list.pop_back();
    };
    drop(adjacency_[u], v);
    drop(adjacency_[v], u);
}

std::vector<EdgeSlot> Configuration::sorted_slots() const {
    std::vector<EdgeSlot> out(present_);
    std::sort(out.begin(), out.end());
    return out;
}

Configuration sample_er(Vertex n, double p, Rng& rng) {
    Configuration cfg(n);
    sample_er_slots(n, p, rng, [&](EdgeSlot s) { cfg.insert(s); });
    return cfg;
}

}  // namespace dyner
