#include "dyner/spectral.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dyner::spectral {

namespace {

void require_bias(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("spectral: bias p must lie strictly inside (0,1)");
}

void require_compatible(std::uint32_t m1, double p1, std::uint32_t m2, double p2) {
    if (m1 != m2 || p1 != p2)
        throw std::invalid_argument("spectral: mismatched bit count or bias");
}

}  // namespace

double basis_value(bool bit_state, double p) {
    require_bias(p);
    return bit_state ? std::sqrt((1.0 - p) / p) : -std::sqrt(p / (1.0 - p));
}

double mask_probability(std::uint32_t mask, std::uint32_t m, double p) {
    const int ones = std::popcount(mask);
    return std::pow(p, ones) * std::pow(1.0 - p, static_cast<int>(m) - ones);
}

FunctionTable::FunctionTable(std::uint32_t m, double p, std::vector<double> values)
    : m_(m), p_(p), values_(std::move(values)) {
    if (m_ > kMaxBits) throw std::invalid_argument("FunctionTable: m exceeds 25 bits");
    require_bias(p_);
    if (values_.size() != (1ull << m_))
        throw std::invalid_argument("FunctionTable: values size must be 2^m");
    is_boolean_ = true;
    for (double v : values_) {
        if (v != 0.0 && v != 1.0) {
            is_boolean_ = false;
            break;
        }
    }
}

FunctionTable FunctionTable::constant(std::uint32_t m, double p, double c) {
    return FunctionTable(m, p, std::vector<double>(1ull << m, c));
}

double FunctionTable::expectation() const {
    double sum = 0.0;
    for (std::uint32_t w = 0; w < size(); ++w) sum += mask_probability(w, m_, p_) * values_[w];
    return sum;
}

double FunctionTable::second_moment() const {
    double sum = 0.0;
    for (std::uint32_t w = 0; w < size(); ++w)
        sum += mask_probability(w, m_, p_) * values_[w] * values_[w];
    return sum;
}

SpectrumTable transform(const FunctionTable& f) {
    const std::uint32_t m = f.bits();
    const double p = f.bias();
    std::vector<double> a(f.values());
    const double s = std::sqrt(p * (1.0 - p));
    // Per-bit split of f into mean and r_e parts under the biased marginal:
    // (v0, v1) -> ((1-p) v0 + p v1, s (v1 - v0)).
    for (std::uint32_t bit = 0; bit < m; ++bit) {
        const std::uint32_t stride = 1u << bit;
        for (std::uint32_t base = 0; base < (1u << m); base += stride << 1) {
            for (std::uint32_t i = base; i < base + stride; ++i) {
                const double v0 = a[i];
                const double v1 = a[i + stride];
                a[i] = (1.0 - p) * v0 + p * v1;
                a[i + stride] = s * (v1 - v0);
            }
        }
    }
    return SpectrumTable{m, p, std::move(a)};
}

FunctionTable inverse_transform(const SpectrumTable& fhat) {
    const std::uint32_t m = fhat.m;
    const double p = fhat.p;
    require_bias(p);
    std::vector<double> a(fhat.coeffs);
    const double r1 = std::sqrt((1.0 - p) / p);
    const double r0 = -std::sqrt(p / (1.0 - p));
    for (std::uint32_t bit = 0; bit < m; ++bit) {
        const std::uint32_t stride = 1u << bit;
        for (std::uint32_t base = 0; base < (1u << m); base += stride << 1) {
            for (std::uint32_t i = base; i < base + stride; ++i) {
                const double mean = a[i];
                const double coef = a[i + stride];
                a[i] = mean + coef * r0;
                a[i + stride] = mean + coef * r1;
            }
        }
    }
    return FunctionTable(m, p, std::move(a));
}

double noise_expectation_spectral(const SpectrumTable& fhat, const SpectrumTable& ghat,
                                  double eps) {
    require_compatible(fhat.m, fhat.p, ghat.m, ghat.p);
    double sum = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << fhat.m); ++mask)
        sum += fhat.coeffs[mask] * ghat.coeffs[mask] *
               std::pow(1.0 - eps, std::popcount(mask));
    return sum;
}

double noise_expectation_exact(const FunctionTable& f, const FunctionTable& g, double eps) {
    require_compatible(f.bits(), f.bias(), g.bits(), g.bias());
    if (f.bits() > kMaxExactBits)
        throw std::invalid_argument("noise_expectation_exact: m exceeds the O(4^m) cap");
    const std::uint32_t m = f.bits();
    const double p = f.bias();
    // kernel[a][b] = P(bit becomes b | bit was a)
    const double kernel[2][2] = {
        {(1.0 - eps) + eps * (1.0 - p), eps * p},
        {eps * (1.0 - p), (1.0 - eps) + eps * p},
    };
    double total = 0.0;
    for (std::uint32_t w = 0; w < f.size(); ++w) {
        const double pw = mask_probability(w, m, p) * f[w];
        if (pw == 0.0) continue;
        for (std::uint32_t w2 = 0; w2 < f.size(); ++w2) {
            double trans = 1.0;
            for (std::uint32_t b = 0; b < m; ++b)
                trans *= kernel[(w >> b) & 1u][(w2 >> b) & 1u];
            total += pw * trans * g[w2];
        }
    }
    return total;
}

std::uint32_t pivotal_set(const FunctionTable& f, std::uint32_t omega) {
    std::uint32_t mask = 0;
    for (std::uint32_t b = 0; b < f.bits(); ++b)
        if (f[omega ^ (1u << b)] != f[omega]) mask |= 1u << b;
    return mask;
}

bool is_increasing(const FunctionTable& f) {
    for (std::uint32_t w = 0; w < f.size(); ++w)
        for (std::uint32_t b = 0; b < f.bits(); ++b)
            if ((w & (1u << b)) == 0 && f[w | (1u << b)] < f[w]) return false;
    return true;
}

bool jointly_monotone(const FunctionTable& f, const FunctionTable& g) {
    require_compatible(f.bits(), f.bias(), g.bits(), g.bias());
    for (std::uint32_t w = 0; w < f.size(); ++w) {
        for (std::uint32_t b = 0; b < f.bits(); ++b) {
            const std::uint32_t w2 = w ^ (1u << b);
            if ((f[w] - f[w2]) * (g[w] - g[w2]) < 0.0) return false;
        }
    }
    return true;
}

PivotalIdentityResult pivotal_identity_check(const FunctionTable& f, const FunctionTable& g,
                                             std::uint32_t e) {
    require_compatible(f.bits(), f.bias(), g.bits(), g.bias());
    if (e >= f.bits()) throw std::invalid_argument("pivotal_identity_check: bit out of range");
    if (!f.is_boolean() || !g.is_boolean())
        throw std::invalid_argument("pivotal_identity_check: tables must be {0,1}-valued");
    if (!jointly_monotone(f, g))
        throw std::invalid_argument("pivotal_identity_check: pair is not jointly monotone");

    const SpectrumTable fhat = transform(f);
    const SpectrumTable ghat = transform(g);
    PivotalIdentityResult out;
    const std::uint32_t bit = 1u << e;
    for (std::uint32_t mask = 0; mask < (1u << f.bits()); ++mask)
        if (mask & bit) out.lhs += fhat.coeffs[mask] * ghat.coeffs[mask];

    const double p = f.bias();
    double prob = 0.0;
    for (std::uint32_t w = 0; w < f.size(); ++w) {
        const bool piv_f = f[w ^ bit] != f[w];
        const bool piv_g = g[w ^ bit] != g[w];
        if (piv_f && piv_g) prob += mask_probability(w, f.bits(), p);
    }
    out.rhs = p * (1.0 - p) * prob;
    out.abs_diff = std::fabs(out.lhs - out.rhs);
    return out;
}

bool fkg_noise_check(const FunctionTable& f, const FunctionTable& g, double eps) {
    require_compatible(f.bits(), f.bias(), g.bits(), g.bias());
    if (!is_increasing(f)) throw std::invalid_argument("fkg_noise_check: f must be increasing");
    // g - f is recomputed from stored values, so allow rounding slack in the
    // monotonicity precondition.
    double scale = 0.0;
    for (std::uint32_t w = 0; w < g.size(); ++w)
        scale = std::max(scale, std::fabs(g[w]) + std::fabs(f[w]));
    const double tol = 64.0 * scale * 1e-16;
    for (std::uint32_t w = 0; w < g.size(); ++w) {
        for (std::uint32_t b = 0; b < g.bits(); ++b) {
            if (w & (1u << b)) continue;
            const std::uint32_t w1 = w | (1u << b);
            if ((g[w1] - f[w1]) - (g[w] - f[w]) < -tol)
                throw std::invalid_argument("fkg_noise_check: g - f must be increasing");
        }
    }

    const double ef = f.expectation();
    const double eg = g.expectation();
    const double cov_f = noise_expectation_exact(f, f, eps) - ef * ef;
    const double cov_g = noise_expectation_exact(g, g, eps) - eg * eg;
    return cov_g >= cov_f - 1e-10;
}

RevealmentBoundResult revealment_bound_check(const FunctionTable& f,
                                             std::span<const double> reveal_probabilities,
                                             std::uint32_t u_mask, std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("revealment_bound_check: k must be >= 1");
    if (reveal_probabilities.size() != f.bits())
        throw std::invalid_argument("revealment_bound_check: need one probability per bit");

    const SpectrumTable fhat = transform(f);
    RevealmentBoundResult out;
    for (std::uint32_t mask = 0; mask < (1u << f.bits()); ++mask) {
        if (std::popcount(mask) != static_cast<int>(k)) continue;
        if (mask & u_mask) continue;
        out.lhs += fhat.coeffs[mask] * fhat.coeffs[mask];
    }
    double revealment = 0.0;
    for (std::uint32_t b = 0; b < f.bits(); ++b)
        if ((u_mask & (1u << b)) == 0) revealment = std::max(revealment, reveal_probabilities[b]);
    out.rhs = revealment * f.second_moment() * static_cast<double>(k);
    out.holds = out.lhs <= out.rhs + 1e-12;
    return out;
}

FunctionTable random_function(std::uint32_t m, double p, Rng& rng) {
    std::vector<double> values(1ull << m);
    for (double& v : values) v = 2.0 * uniform_open01(rng) - 1.0;
    return FunctionTable(m, p, std::move(values));
}

FunctionTable random_increasing_indicator(std::uint32_t m, double p, Rng& rng,
                                          std::uint32_t max_filters) {
    const std::uint32_t count = 1 + static_cast<std::uint32_t>(uniform_below(rng, max_filters));
    std::vector<std::uint32_t> bases(count);
    for (auto& b : bases) b = static_cast<std::uint32_t>(uniform_below(rng, 1ull << m));
    std::vector<double> values(1ull << m, 0.0);
    for (std::uint32_t w = 0; w < (1u << m); ++w)
        for (std::uint32_t b : bases)
            if ((w & b) == b) {
                values[w] = 1.0;
                break;
            }
    return FunctionTable(m, p, std::move(values));
}

FunctionTable random_increasing_function(std::uint32_t m, double p, Rng& rng,
                                         std::uint32_t max_filters) {
    const std::uint32_t count = 1 + static_cast<std::uint32_t>(uniform_below(rng, max_filters));
    std::vector<double> values(1ull << m, 0.0);
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint32_t base = static_cast<std::uint32_t>(uniform_below(rng, 1ull << m));
        const double weight = uniform_open01(rng);
        for (std::uint32_t w = 0; w < (1u << m); ++w)
            if ((w & base) == base) values[w] += weight;
    }
    return FunctionTable(m, p, std::move(values));
}

}  // namespace dyner::spectral
