#include "dyner/spectral_suite.hpp"

#include <cmath>
#include <stdexcept>

#include "dyner/random.hpp"
#include "dyner/spectral.hpp"

namespace dyner::spectral {

bool SuiteResult::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

SuiteResult run_spectral_suite(std::uint32_t m, double p, std::uint32_t pairs,
                               std::uint64_t seed, double tolerance) {
    if (m < 1 || m > 8)
        throw std::invalid_argument("spectral suite: m must lie in [1, 8] (O(4^m) oracles)");
    if (pairs < 1) throw std::invalid_argument("spectral suite: need at least one pair");

    Rng rng(seed);
    const std::uint32_t size = 1u << m;

    // chi_S(omega) from the definition, tabulated once.
    std::vector<double> chi(static_cast<std::size_t>(size) * size);
    for (std::uint32_t s = 0; s < size; ++s) {
        for (std::uint32_t w = 0; w < size; ++w) {
            double prod = 1.0;
            for (std::uint32_t b = 0; b < m; ++b)
                if (s & (1u << b)) prod *= basis_value((w >> b) & 1u, p);
            chi[static_cast<std::size_t>(s) * size + w] = prod;
        }
    }
    std::vector<double> weight(size);
    for (std::uint32_t w = 0; w < size; ++w) weight[w] = mask_probability(w, m, p);

    double orth = 0.0;
    for (std::uint32_t s1 = 0; s1 < size; ++s1) {
        for (std::uint32_t s2 = s1; s2 < size; ++s2) {
            double e = 0.0;
            for (std::uint32_t w = 0; w < size; ++w)
                e += weight[w] * chi[static_cast<std::size_t>(s1) * size + w] *
                     chi[static_cast<std::size_t>(s2) * size + w];
            orth = std::max(orth, std::fabs(e - (s1 == s2 ? 1.0 : 0.0)));
        }
    }

    double mean_diff = 0.0, reconstruction = 0.0, plancherel = 0.0, parseval = 0.0,
           noise = 0.0, pivotal = 0.0;
    std::uint64_t fkg_failures = 0;
    for (std::uint32_t trial = 0; trial < pairs; ++trial) {
        const auto f = random_function(m, p, rng);
        const auto g = random_function(m, p, rng);
        const auto fhat = transform(f);
        const auto ghat = transform(g);

        mean_diff = std::max(mean_diff, std::fabs(f.expectation() - fhat.coeffs[0]));

        for (std::uint32_t w = 0; w < size; ++w) {
            double rec = 0.0;
            for (std::uint32_t s = 0; s < size; ++s)
                rec += fhat.coeffs[s] * chi[static_cast<std::size_t>(s) * size + w];
            reconstruction = std::max(reconstruction, std::fabs(rec - f[w]));
        }

        double dot = 0.0, sq = 0.0, efg = 0.0;
        for (std::uint32_t s = 0; s < size; ++s) {
            dot += fhat.coeffs[s] * ghat.coeffs[s];
            sq += fhat.coeffs[s] * fhat.coeffs[s];
        }
        for (std::uint32_t w = 0; w < size; ++w) efg += weight[w] * f[w] * g[w];
        plancherel = std::max(plancherel, std::fabs(dot - efg));
        parseval = std::max(parseval, std::fabs(sq - f.second_moment()));

        for (int i = 0; i <= 10; ++i) {
            const double eps = i / 10.0;
            noise = std::max(noise, std::fabs(noise_expectation_spectral(fhat, ghat, eps) -
                                              noise_expectation_exact(f, g, eps)));
        }

        // pivotality on a fresh jointly monotone Boolean pair, every bit
        const auto fb = random_increasing_indicator(m, p, rng);
        const auto gb = random_increasing_indicator(m, p, rng);
        for (std::uint32_t e = 0; e < m; ++e)
            pivotal = std::max(pivotal, pivotal_identity_check(fb, gb, e).abs_diff);

        // FKG comparison on f increasing, g = f + increasing
        const auto fi = random_increasing_function(m, p, rng);
        const auto hi = random_increasing_function(m, p, rng);
        std::vector<double> gv(fi.values());
        for (std::uint32_t w = 0; w < size; ++w) gv[w] += hi[w];
        const FunctionTable gi(m, p, std::move(gv));
        for (int i = 0; i <= 10; ++i)
            if (!fkg_noise_check(fi, gi, i / 10.0)) ++fkg_failures;
    }

    SuiteResult result;
    auto add = [&](const std::string& name, double diff) {
        result.checks.push_back({name, diff, diff < tolerance});
    };
    add("orthonormality", orth);
    add("mean_equals_empty_coefficient", mean_diff);
    add("reconstruction", reconstruction);
    add("plancherel", plancherel);
    add("parseval", parseval);
    add("noise_identity", noise);
    add("pivotal_identity", pivotal);
    result.checks.push_back(
        {"fkg_comparison_failures", static_cast<double>(fkg_failures), fkg_failures == 0});
    return result;
}

}  // namespace dyner::spectral
