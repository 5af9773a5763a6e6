// Closed-form tail formulas for near-critical component sizes, and the
// bound envelopes (functional shapes without constants) the Monte Carlo
// experiments compare against. Everything here is a pure function.
//
// Window parameterization: p = 1/n + lambda * n^{-4/3}; positive lambda is
// the supercritical side.

#pragma once

#include <cstdint>

namespace dyner::asymptotics {

// Thresholds of the sup-size dichotomy for the dynamical critical graph:
// the limit probability is 1 below the lower constant and 0 at or above
// the upper one.
inline constexpr double kSupLowerBeta = 0.9614997135382722;  // 2 / 3^(2/3)
inline constexpr double kSupUpperBeta = 1.3867225487012695;  // 2 / 3^(1/3)

double lambda_to_p(std::uint64_t n, double lambda);

// G_lambda(x) = x^3/8 - lambda x^2/2 + lambda^2 x/2 and its derivative.
double big_g(double lambda, double x);
double big_g_prime(double lambda, double x);

// F_lambda(x) = x^3/6 - lambda x^2/2 + lambda^2 x/2.
double big_f(double lambda, double x);

struct TailQuery {
    std::uint64_t n = 0;
    double lambda = 0.0;
    double A = 0.0;       // rescaled size threshold, component size / n^{2/3}
    std::uint64_t k = 0;  // absolute size in vertices (point envelopes)
};

struct TailValue {
    double value = 0.0;
    bool lambda_in_window = true;  // |lambda| << n^{1/12}
    bool a_in_window = true;       // min(3 lambda, 1) <= A << n^{1/12}
};

// Leading order of P(|C_v| >= A n^{2/3}) under ER(n, p(lambda)):
//   A^{3/2} / (sqrt(8 pi) n^{1/3} G'_lambda(A)) * exp(-G_lambda(A)).
// Throws if G'_lambda(A) <= 0; out-of-window queries are answered but
// flagged.
TailValue pittel_component_tail(const TailQuery& q);

// Leading order of P(L_n >= A n^{2/3}):
//   A^{1/2} / (sqrt(8 pi) G'_lambda(A)) * exp(-G_lambda(A)).
TailValue pittel_largest_tail(const TailQuery& q);

struct BoundEnvelopes {
    // Shape of P(|C_u union C_v| >= N, both < N, disjoint): (N^2/n^2) e^{-N^3/(8n^2)}.
    double pair_bound = 0.0;
    // Same event restricted to w in C_u:
    //   (1/(n^{2/3} N^{1/2}) + N^3/n^3) e^{-N^3/(8n^2)}.
    double triple_bound = 0.0;
};

BoundEnvelopes bound_envelopes(std::uint64_t n, double N);

// Two-regime point envelopes for P(|C_v| = k):
//   k <= n^{2/3}:            k^{-3/2} exp(-F_lambda(k / n^{2/3}))
//   n^{2/3} <= k <= n^{3/4}: (k^{3/2}/n^2) exp(-G_lambda(k / n^{2/3}))
double point_envelope_small(std::uint64_t n, double k, double lambda);
double point_envelope_large(std::uint64_t n, double k, double lambda);

}  // namespace dyner::asymptotics
