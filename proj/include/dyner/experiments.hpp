// Replica-parallel Monte Carlo harness. Every replica draws its RNG stream
// from (master seed, cell index, replica index) alone, results are written
// into per-replica slots and reduced in index order, so output is
// bit-identical for any worker count or scheduling.

#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "dyner/dynamics.hpp"
#include "dyner/random.hpp"

namespace dyner::experiments {

// Runs fn(ctx, replica_index) for every replica index in [0, reps), spread
// over `workers` threads. Each worker owns one Ctx built by make_ctx().
// Results land in a vector indexed by replica, independent of scheduling.
template <class T, class MakeCtx, class Fn>
std::vector<T> parallel_replicas(std::uint64_t reps, std::uint32_t workers, MakeCtx make_ctx,
                                 Fn fn) {
    std::vector<T> results(reps);
    if (reps == 0) return results;
    const std::uint32_t nthreads =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(workers ? workers : 1, reps));
    if (nthreads == 1) {
        auto ctx = make_ctx();
        for (std::uint64_t r = 0; r < reps; ++r) results[r] = fn(ctx, r);
        return results;
    }
    std::atomic<std::uint64_t> next{0};
    constexpr std::uint64_t kBlock = 16;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::uint32_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            auto ctx = make_ctx();
            for (;;) {
                const std::uint64_t begin = next.fetch_add(kBlock);
                if (begin >= reps) return;
                const std::uint64_t end = std::min(begin + kBlock, reps);
                for (std::uint64_t r = begin; r < end; ++r) results[r] = fn(ctx, r);
            }
        });
    }
    for (auto& th : pool) th.join();
    return results;
}

// n^{2/3} log^{1/3} n, the sup-size normalization unit.
double sup_unit(std::uint64_t n);

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
};

// --- sup experiment ---------------------------------------------------

struct SupPlan {
    std::vector<Vertex> n_values;
    std::vector<double> betas;
    std::uint64_t replicas = 0;
    // Optional per-n override, parallel to n_values; empty means `replicas`
    // everywhere. Larger n costs more per trajectory, so grids often taper.
    std::vector<std::uint64_t> replicas_per_n;
    std::uint64_t master_seed = 0;
    std::uint32_t workers = 1;
    double horizon = 1.0;
};

struct SupEntry {
    Vertex n = 0;
    std::uint64_t replicas = 0;
    std::vector<std::pair<double, Estimate>> exceed;  // (beta, P(sup_norm > beta))
    double median = 0.0, mean = 0.0, q25 = 0.0, q75 = 0.0;
    std::vector<double> normalized_sup;  // per replica
    std::vector<double> normalized_t0;   // |L_n(0)| normalized, per replica
};

struct SupResult {
    SupPlan plan;
    std::vector<SupEntry> entries;  // one per n, cell index = position
};

SupResult run_sup_experiment(const SupPlan& plan);

// --- static tail experiment -------------------------------------------

struct TailPlan {
    std::vector<Vertex> n_values;
    double lambda = 0.0;
    std::vector<double> thresholds;  // A values
    std::uint64_t replicas = 0;
    std::uint64_t master_seed = 0;
    std::uint32_t workers = 1;
};

struct TailCell {
    double A = 0.0;
    Estimate component_emp;  // P(|C_1| >= A n^{2/3})
    double component_formula = 0.0;
    Estimate component_ratio;
    Estimate largest_emp;  // P(L_n >= A n^{2/3})
    double largest_formula = 0.0;
    Estimate largest_ratio;
};

struct TailEntry {
    Vertex n = 0;
    std::uint64_t replicas = 0;
    std::vector<TailCell> cells;
};

struct TailResult {
    TailPlan plan;
    std::vector<TailEntry> entries;
};

TailResult run_tail_experiment(const TailPlan& plan);

// --- noise sensitivity experiment ---------------------------------------

struct NoisePlan {
    Vertex n = 0;
    double a = 1.0;
    std::vector<double> eps_values;
    std::uint64_t replicas = 0;
    std::uint64_t master_seed = 0;
    std::uint32_t workers = 1;
};

struct NoiseCell {
    double eps = 0.0;
    Estimate cov_f;        // paired sample covariance of (F(w), F(w_eps))
    Estimate cov_g;        // same for the counting function G
    double diff_se = 0.0;  // stderr of cov_g - cov_f (same replicas)
    double mean_f = 0.0;
};

struct NoiseResult {
    NoisePlan plan;
    std::vector<NoiseCell> cells;  // one per eps, cell index = position
};

NoiseResult run_noise_sensitivity(const NoisePlan& plan);

// --- second-moment experiment -------------------------------------------

struct SecondMomentPlan {
    Vertex n = 0;
    double beta = 0.5;
    std::uint64_t replicas = 0;
    std::uint64_t master_seed = 0;
    std::uint32_t workers = 1;
};

struct SecondMomentResult {
    SecondMomentPlan plan;
    dynamics::SizeInterval interval;
    Estimate ez1;
    Estimate ez1_sq;
    Estimate ez1z2;
    double ratio_eq41 = 0.0;  // n^2 E[Z1]^2 / (n E[Z1^2] + n(n-1) E[Z1 Z2])
    Estimate static_prob;     // P(|C_1(0)| in I)
};

SecondMomentResult run_second_moment(const SecondMomentPlan& plan);

// --- union-bound experiment ----------------------------------------------

struct UnionBoundPlan {
    Vertex n = 0;
    double beta = 1.0;
    std::uint64_t replicas = 0;
    std::uint64_t master_seed = 0;
    std::uint32_t workers = 1;
};

struct UnionBoundResult {
    UnionBoundPlan plan;
    std::uint32_t interval_count = 0;    // floor(n^{1/3}) pieces covering [0,1]
    std::vector<Estimate> interval_frequency;
    double mean_exceed_count = 0.0;      // mean #intervals hit per trajectory
    Estimate any_exceed;
    std::uint64_t coverage_mismatches = 0;  // any-interval vs sup disagreement
};

UnionBoundResult run_union_bound(const UnionBoundPlan& plan);

// --- revealment scaling experiment ----------------------------------------

struct RevealPlan {
    std::vector<Vertex> n_values;
    double a = 1.0;  // N = ceil(a n^{2/3})
    std::uint64_t replicas = 0;
    std::uint64_t master_seed = 0;
    std::uint32_t workers = 1;
};

struct RevealEntry {
    Vertex n = 0;
    std::uint32_t N = 0;
    std::uint64_t replicas = 0;
    Estimate off_hub_frequency;
    double scaled_off_hub = 0.0;  // off_hub_frequency * n^{2/3}
    double hub_frequency = 0.0;
    Estimate decision_frequency;
};

struct RevealResult {
    RevealPlan plan;
    std::vector<RevealEntry> entries;
};

RevealResult run_reveal_experiment(const RevealPlan& plan);

}  // namespace dyner::experiments
