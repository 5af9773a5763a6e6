// Exact Fourier analysis of functions on {0,1}^m under the biased product
// measure P_p. The orthonormal basis is chi_S = prod_{e in S} r_e with
// r_e = sqrt((1-p)/p) on present bits and -sqrt(p/(1-p)) on absent ones.
// Everything here is dense and exact; m is capped at 25 bits.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dyner/random.hpp"

namespace dyner::spectral {

inline constexpr std::uint32_t kMaxBits = 25;
inline constexpr std::uint32_t kMaxExactBits = 10;  // O(4^m) brute-force cap

// Basis value r_e for one bit under bias p; rejects p in {0,1}.
double basis_value(bool bit_state, double p);

// P_p(omega) for an m-bit mask.
double mask_probability(std::uint32_t mask, std::uint32_t m, double p);

class FunctionTable {
  public:
    FunctionTable(std::uint32_t m, double p, std::vector<double> values);
    static FunctionTable constant(std::uint32_t m, double p, double c);

    std::uint32_t bits() const { return m_; }
    double bias() const { return p_; }
    std::uint32_t size() const { return 1u << m_; }
    double operator[](std::uint32_t mask) const { return values_[mask]; }
    const std::vector<double>& values() const { return values_; }
    bool is_boolean() const { return is_boolean_; }

    double expectation() const;
    double second_moment() const;

  private:
    std::uint32_t m_;
    double p_;
    std::vector<double> values_;
    bool is_boolean_;
};

struct SpectrumTable {
    std::uint32_t m = 0;
    double p = 0.5;
    std::vector<double> coeffs;  // indexed by subset bitmask

    double operator[](std::uint32_t mask) const { return coeffs[mask]; }
};

// Exact Fourier coefficients via a per-bit butterfly, O(m 2^m).
SpectrumTable transform(const FunctionTable& f);
FunctionTable inverse_transform(const SpectrumTable& fhat);

// Sum_S fhat(S) ghat(S) (1-eps)^{|S|}: the spectral form of
// E[f(omega) g(omega_eps)] where omega_eps rerandomizes each bit with
// probability eps.
double noise_expectation_spectral(const SpectrumTable& fhat, const SpectrumTable& ghat,
                                  double eps);

// Brute-force E[f(omega) g(omega_eps)] with the per-bit transition kernel
// k(a,b) = (1-eps) 1{a=b} + eps p^b (1-p)^{1-b}. O(4^m); oracle for the
// spectral route.
double noise_expectation_exact(const FunctionTable& f, const FunctionTable& g, double eps);

// Bits whose flip changes f at omega, as a bitmask.
std::uint32_t pivotal_set(const FunctionTable& f, std::uint32_t omega);

bool is_increasing(const FunctionTable& f);

// True iff (f(omega)-f(flip_e omega))(g(omega)-g(flip_e omega)) >= 0 for
// every omega and e.
bool jointly_monotone(const FunctionTable& f, const FunctionTable& g);

struct PivotalIdentityResult {
    double lhs = 0.0;  // sum over S containing e of fhat(S) ghat(S)
    double rhs = 0.0;  // p(1-p) P(e pivotal for both)
    double abs_diff = 0.0;
};

// Checks sum_{S: e in S} fhat(S) ghat(S) = p(1-p) P(e pivotal for both).
// Requires f, g Boolean-valued and jointly monotone.
PivotalIdentityResult pivotal_identity_check(const FunctionTable& f, const FunctionTable& g,
                                             std::uint32_t e);

// Checks the noise-covariance comparison for f and g with f and g-f both
// increasing: cov_eps(g) >= cov_eps(f), both sides by exact enumeration.
bool fkg_noise_check(const FunctionTable& f, const FunctionTable& g, double eps);

struct RevealmentBoundResult {
    double lhs = 0.0;  // sum over |S|=k, S disjoint from U, of fhat(S)^2
    double rhs = 0.0;  // max_{e not in U} reveal_probability[e] * E[f^2] * k
    bool holds = false;
};

// Level-k spectral mass off U against the revealment bound of an algorithm
// with the given per-bit reveal probabilities.
RevealmentBoundResult revealment_bound_check(const FunctionTable& f,
                                             std::span<const double> reveal_probabilities,
                                             std::uint32_t u_mask, std::uint32_t k);

// Test-input generators.
FunctionTable random_function(std::uint32_t m, double p, Rng& rng);
// Random up-set indicator: union of random principal filters.
FunctionTable random_increasing_indicator(std::uint32_t m, double p, Rng& rng,
                                          std::uint32_t max_filters = 4);
// Nonnegative weighted sum of principal-filter indicators; increasing.
FunctionTable random_increasing_function(std::uint32_t m, double p, Rng& rng,
                                         std::uint32_t max_filters = 4);

}  // namespace dyner::spectral
