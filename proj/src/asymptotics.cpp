#include "dyner/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dyner::asymptotics {

double lambda_to_p(std::uint64_t n, double lambda) {
    const double nd = static_cast<double>(n);
    return 1.0 / nd + lambda * std::pow(nd, -4.0 / 3.0);
}

double big_g(double lambda, double x) {
    return x * x * x / 8.0 - lambda * x * x / 2.0 + lambda * lambda * x / 2.0;
}

double big_g_prime(double lambda, double x) {
    return 3.0 * x * x / 8.0 - lambda * x + lambda * lambda / 2.0;
}

double big_f(double lambda, double x) {
    return x * x * x / 6.0 - lambda * x * x / 2.0 + lambda * lambda * x / 2.0;
}

namespace {

// "<<" is operationalized as ratio < n^{-1/24}: soft flags, never rejections.
void attach_flags(const TailQuery& q, TailValue& v) {
    const double nd = static_cast<double>(q.n);
    const double window = std::pow(nd, 1.0 / 12.0);
    const double soft = std::pow(nd, -1.0 / 24.0);
    v.lambda_in_window = std::fabs(q.lambda) / window < soft;
    const double lower = std::min(3.0 * q.lambda, 1.0);
    v.a_in_window = (q.A >= lower) && (q.A / window < soft);
}

}  // namespace

TailValue pittel_component_tail(const TailQuery& q) {
    if (q.n < 1) throw std::invalid_argument("pittel_component_tail: n must be >= 1");
    const double gp = big_g_prime(q.lambda, q.A);
    if (gp <= 0.0)
        throw std::domain_error("pittel_component_tail: G'_lambda(A) <= 0");
    TailValue v;
    const double nd = static_cast<double>(q.n);
    v.value = std::pow(q.A, 1.5) /
              (std::sqrt(8.0 * std::numbers::pi) * std::cbrt(nd) * gp) *
              std::exp(-big_g(q.lambda, q.A));
    attach_flags(q, v);
    return v;
}

TailValue pittel_largest_tail(const TailQuery& q) {
    if (q.n < 1) throw std::invalid_argument("pittel_largest_tail: n must be >= 1");
    const double gp = big_g_prime(q.lambda, q.A);
    if (gp <= 0.0)
        throw std::domain_error("pittel_largest_tail: G'_lambda(A) <= 0");
    TailValue v;
    v.value = std::sqrt(q.A) / (std::sqrt(8.0 * std::numbers::pi) * gp) *
              std::exp(-big_g(q.lambda, q.A));
    attach_flags(q, v);
    return v;
}

BoundEnvelopes bound_envelopes(std::uint64_t n, double N) {
    if (N < 1.0) throw std::invalid_argument("bound_envelopes: N must be >= 1");
    const double nd = static_cast<double>(n);
    const double decay = std::exp(-N * N * N / (8.0 * nd * nd));
    BoundEnvelopes b;
    b.pair_bound = (N * N / (nd * nd)) * decay;
    b.triple_bound =
        (1.0 / (std::pow(nd, 2.0 / 3.0) * std::sqrt(N)) + N * N * N / (nd * nd * nd)) * decay;
    return b;
}

double point_envelope_small(std::uint64_t n, double k, double lambda) {
    const double x = k / std::pow(static_cast<double>(n), 2.0 / 3.0);
    return std::pow(k, -1.5) * std::exp(-big_f(lambda, x));
}

double point_envelope_large(std::uint64_t n, double k, double lambda) {
    const double nd = static_cast<double>(n);
    const double x = k / std::pow(nd, 2.0 / 3.0);
    return std::pow(k, 1.5) / (nd * nd) * std::exp(-big_g(lambda, x));
}

}  // namespace dyner::asymptotics
