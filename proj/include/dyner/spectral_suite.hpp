// Identity battery behind the spectral-check command: runs every exact
// spectral identity on randomly generated function pairs and reports the
// worst absolute deviation per identity. All oracles are brute-force
// enumerations, which caps m at 8 (O(4^m) cost).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dyner::spectral {

struct SuiteCheck {
    std::string name;
    double max_abs_diff = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::vector<SuiteCheck> checks;
    bool all_pass() const;
};

// pairs = number of random function pairs per identity; tolerance is the
// pass threshold on every max |diff|.
SuiteResult run_spectral_suite(std::uint32_t m, double p, std::uint32_t pairs,
                               std::uint64_t seed, double tolerance = 1e-10);

}  // namespace dyner::spectral
