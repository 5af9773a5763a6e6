// Random-number helpers shared across the library.
//
// All sampling goes through these functions rather than <random>
// distributions so that a fixed seed produces the same stream on every
// platform and standard library.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dyner {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Per-replica seed for cell `cell` and replica `replica` under `master`.
// The key packs (cell, replica) into one word (cell < 2^24, replica < 2^40),
// so for a fixed master seed distinct (cell, replica) pairs give distinct
// seeds: both the packing and mix64 are injective.
inline std::uint64_t replica_seed(std::uint64_t master, std::uint64_t cell,
                                  std::uint64_t replica) {
    const std::uint64_t key = (cell << 40) | (replica & ((1ULL << 40) - 1));
    return mix64(mix64(master) ^ key);
}

// Uniform double in the open interval (0,1).
inline double uniform_open01(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform integer in [0, bound). bound >= 1.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= threshold) return x % bound;
    }
}

inline bool bernoulli(Rng& rng, double p) { return uniform_open01(rng) < p; }

// Exponential waiting time with the given rate.
inline double exponential(Rng& rng, double rate) {
    return -std::log(uniform_open01(rng)) / rate;
}

// Number of failures before the first success in Bernoulli(p) trials.
// Used for skip-sampling sparse Bernoulli processes over index ranges.
inline std::uint64_t geometric_skip(Rng& rng, double log1m_p) {
    // log1m_p = log(1-p), precomputed by the caller; must be < 0.
    const double u = uniform_open01(rng);
    const double g = std::floor(std::log(u) / log1m_p);
    if (g >= 9.2e18) return UINT64_MAX;
    return static_cast<std::uint64_t>(g);
}

// Visits each index in [0, count) independently with probability p,
// in ascending order. Touches O(p * count) indices in expectation.
template <class Fn>
void skip_sample(Rng& rng, std::uint64_t count, double p, Fn&& fn) {
    if (p <= 0.0 || count == 0) return;
    if (p >= 1.0) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const double log1m_p = std::log1p(-p);
    std::uint64_t i = geometric_skip(rng, log1m_p);
    while (i < count) {
        fn(i);
        const std::uint64_t gap = geometric_skip(rng, log1m_p);
        if (gap >= count - i - 1) break;  // next index would leave the range
        i += 1 + gap;
    }
}

}  // namespace dyner
