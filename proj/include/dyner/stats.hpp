// Small statistics toolbox: moments, quantiles, the regularized incomplete
// gamma function, and chi-square tests used by the law checks.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dyner::stats {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // unbiased sample variance
    double stderr_of_mean = 0.0;
    std::uint64_t count = 0;
};

Moments moments(std::span<const double> xs);

// Linear-interpolation quantile of an unsorted sample, q in [0,1].
double quantile(std::span<const double> xs, double q);

// Regularized incomplete gamma functions: gamma_p(a,x) = P(a,x), lower;
// gamma_q(a,x) = Q(a,x) = 1 - P(a,x), upper.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Survival function of the chi-square distribution with df degrees of
// freedom, i.e. P(X > x).
double chi_square_sf(double x, double df);

struct ChiSquareTest {
    double statistic = 0.0;
    std::uint64_t df = 0;
    double p_value = 1.0;
};

// Two-sample homogeneity test for integer-valued samples. Values are pooled
// and binned adaptively so every bin has a pooled count of at least
// `min_bin_count`.
ChiSquareTest chi_square_two_sample(std::span<const std::uint64_t> a,
                                    std::span<const std::uint64_t> b,
                                    std::uint64_t min_bin_count = 20);

// Goodness-of-fit of a positive sample against Exponential(rate), binned on
// the distribution's deciles.
ChiSquareTest chi_square_exponential_fit(std::span<const double> xs, double rate);

}  // namespace dyner::stats
