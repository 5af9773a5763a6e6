#include "dyner/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace dyner::stats {

Moments moments(std::span<const double> xs) {
    Moments m;
    m.count = xs.size();
    if (xs.empty()) return m;
    double sum = 0.0;
    for (double x : xs) sum += x;
    m.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return m;
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - m.mean;
        ss += d * d;
    }
    m.variance = ss / static_cast<double>(xs.size() - 1);
    m.stderr_of_mean = std::sqrt(m.variance / static_cast<double>(xs.size()));
    return m;
}

double quantile(std::span<const double> xs, double q) {
    if (xs.empty()) throw std::invalid_argument("quantile: empty sample");
    std::vector<double> s(xs.begin(), xs.end());
    std::sort(s.begin(), s.end());
    if (q <= 0.0) return s.front();
    if (q >= 1.0) return s.back();
    const double pos = q * static_cast<double>(s.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= s.size()) return s.back();
    return s[lo] * (1.0 - frac) + s[lo + 1] * frac;
}

namespace {

// Series expansion of P(a,x), valid for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x), valid for x >= a+1 (modified Lentz).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_sf(double x, double df) {
    if (x <= 0.0) return 1.0;
    return gamma_q(df / 2.0, x / 2.0);
}

ChiSquareTest chi_square_two_sample(std::span<const std::uint64_t> a,
                                    std::span<const std::uint64_t> b,
                                    std::uint64_t min_bin_count) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("chi_square_two_sample: empty sample");

    std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> counts;
    for (auto v : a) counts[v].first++;
    for (auto v : b) counts[v].second++;

    // Greedy ascending-value binning with pooled count >= min_bin_count.
    std::vector<std::pair<double, double>> bins;  // (count_a, count_b)
    double ca = 0.0, cb = 0.0;
    for (const auto& [value, c] : counts) {
        (void)value;
        ca += static_cast<double>(c.first);
        cb += static_cast<double>(c.second);
        if (ca + cb >= static_cast<double>(min_bin_count)) {
            bins.emplace_back(ca, cb);
            ca = cb = 0.0;
        }
    }
    if (ca + cb > 0.0) {
        if (!bins.empty()) {
            bins.back().first += ca;
            bins.back().second += cb;
        } else {
            bins.emplace_back(ca, cb);
        }
    }

    ChiSquareTest t;
    if (bins.size() < 2) return t;  // indistinguishable: statistic 0, p 1

    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double stat = 0.0;
    for (const auto& [oa, ob] : bins) {
        const double pooled = (oa + ob) / (na + nb);
        const double ea = pooled * na;
        const double eb = pooled * nb;
        stat += (oa - ea) * (oa - ea) / ea;
        stat += (ob - eb) * (ob - eb) / eb;
    }
    t.statistic = stat;
    t.df = bins.size() - 1;
    t.p_value = chi_square_sf(stat, static_cast<double>(t.df));
    return t;
}

ChiSquareTest chi_square_exponential_fit(std::span<const double> xs, double rate) {
    if (xs.empty() || rate <= 0.0)
        throw std::invalid_argument("chi_square_exponential_fit: bad arguments");
    constexpr int kBins = 10;
    // Decile edges of Exponential(rate): F^{-1}(k/10) = -log(1-k/10)/rate.
    double observed[kBins] = {};
    for (double x : xs) {
        const double u = 1.0 - std::exp(-rate * x);
        int b = static_cast<int>(u * kBins);
        if (b >= kBins) b = kBins - 1;
        if (b < 0) b = 0;
        observed[b] += 1.0;
    }
    const double expected = static_cast<double>(xs.size()) / kBins;
    double stat = 0.0;
    for (double o : observed) stat += (o - expected) * (o - expected) / expected;
    ChiSquareTest t;
    t.statistic = stat;
    t.df = kBins - 1;
    t.p_value = chi_square_sf(stat, static_cast<double>(t.df));
    return t;
}

}  // namespace dyner::stats
