#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "dyner/experiments.hpp"
#include "dyner/stats.hpp"
#include "dyner/union_find.hpp"

using namespace dyner;
using namespace dyner::experiments;

TEST_CASE("replica seeds are distinct across cells and replicas") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t cell = 0; cell < 40; ++cell)
        for (std::uint64_t rep = 0; rep < 200; ++rep)
            seen.insert(replica_seed(991, cell, rep));
    CHECK(seen.size() == 40 * 200);
}

TEST_CASE("epoch union-find matches component view") {
    Rng rng(31);
    EpochUnionFind uf(64);
    for (int trial = 0; trial < 100; ++trial) {
        const Vertex n = 2 + static_cast<Vertex>(uniform_below(rng, 63));
        const Configuration cfg = sample_er(n, 2.0 / n, rng);
        const auto view = components(cfg);
        uf.reset();
        for (EdgeSlot s : cfg.present()) {
            const auto [u, v] = cfg.space().edge_pair(s);
            uf.unite(u, v);
        }
        CHECK(uf.max_size() == view.largest());
        // Enumerate touched components first: queries below touch vertices.
        std::uint64_t sum = 0;
        uf.for_each_touched_component([&](std::uint32_t size) { sum += size; });
        std::uint64_t isolated = 0;
        for (Vertex v = 1; v <= n; ++v)
            if (cfg.neighbors(v).empty()) ++isolated;
        CHECK(sum == n - isolated);
        for (Vertex v = 1; v <= n; ++v)
            CHECK(uf.component_size(v) == view.component_size(v));
    }
}

TEST_CASE("sup experiment basics and determinism across workers") {
    SupPlan plan;
    plan.n_values = {150, 300};
    plan.betas = {0.0, 0.6, 0.9, 1.5};
    plan.replicas = 60;
    plan.master_seed = 555;
    plan.workers = 1;
    const auto r1 = run_sup_experiment(plan);
    plan.workers = 4;
    const auto r2 = run_sup_experiment(plan);

    REQUIRE(r1.entries.size() == 2);
    for (std::size_t e = 0; e < r1.entries.size(); ++e) {
        CHECK(r1.entries[e].normalized_sup == r2.entries[e].normalized_sup);
        CHECK(r1.entries[e].median == r2.entries[e].median);
        for (std::size_t b = 0; b < plan.betas.size(); ++b)
            CHECK(r1.entries[e].exceed[b].second.value ==
                  r2.entries[e].exceed[b].second.value);
    }

    for (const auto& entry : r1.entries) {
        // beta = 0: probability exactly 1
        CHECK(entry.exceed[0].second.value == 1.0);
        // nested events: non-increasing in beta
        for (std::size_t b = 1; b < entry.exceed.size(); ++b)
            CHECK(entry.exceed[b].second.value <= entry.exceed[b - 1].second.value);
        CHECK(entry.median >= entry.q25);
        CHECK(entry.q75 >= entry.median);
    }
}

TEST_CASE("tail experiment: largest dominates single component") {
    TailPlan plan;
    plan.n_values = {400};
    plan.lambda = 0.0;
    plan.thresholds = {0.8, 1.0, 1.3};
    plan.replicas = 4000;
    plan.master_seed = 777;
    plan.workers = 2;
    const auto result = run_tail_experiment(plan);
    REQUIRE(result.entries.size() == 1);
    for (const auto& cell : result.entries[0].cells) {
        CHECK(cell.largest_emp.value >= cell.component_emp.value);
        CHECK(cell.component_formula > 0.0);
        CHECK(cell.largest_formula > 0.0);
        // desk-scale sanity: empirical within an order of magnitude
        CHECK(cell.component_ratio.value > 0.1);
        CHECK(cell.component_ratio.value < 10.0);
    }
}

TEST_CASE("noise experiment: endpoints of the eps grid") {
    NoisePlan plan;
    plan.n = 500;
    plan.a = 1.0;
    plan.eps_values = {0.0, 1.0};
    plan.replicas = 3000;
    plan.master_seed = 4242;
    plan.workers = 2;
    const auto result = run_noise_sensitivity(plan);
    REQUIRE(result.cells.size() == 2);

    // eps = 0: covariance equals the (positive) variance of F
    const auto& at0 = result.cells[0];
    const double mf = at0.mean_f;
    CHECK(mf > 0.05);
    CHECK(mf < 0.95);
    CHECK(at0.cov_f.value == doctest::Approx(mf * (1 - mf)).epsilon(0.05));

    // eps = 1: independence, covariance within 4 SE of zero
    const auto& at1 = result.cells[1];
    CHECK(std::fabs(at1.cov_f.value) <= 4.0 * at1.cov_f.stderr_);
    CHECK(std::fabs(at1.cov_g.value) <= 4.0 * at1.cov_g.stderr_);

    // FKG ordering within noise at both points
    for (const auto& cell : result.cells)
        CHECK(cell.cov_f.value <= cell.cov_g.value + 4.0 * cell.diff_se);
}

TEST_CASE("second-moment experiment cross-checks") {
    SecondMomentPlan plan;
    plan.n = 300;
    plan.beta = 0.45;
    plan.replicas = 800;
    plan.master_seed = 90;
    plan.workers = 2;
    const auto result = run_second_moment(plan);

    CHECK(result.interval.lo <= result.interval.hi);
    // Z in [0,1] forces E[Z^2] <= E[Z]
    CHECK(result.ez1_sq.value <= result.ez1.value + 1e-12);
    // E[Z_1] = P(|C_1(0)| in I) by stationarity and Fubini
    const double gap = std::fabs(result.ez1.value - result.static_prob.value);
    const double se =
        std::hypot(result.ez1.stderr_, result.static_prob.stderr_);
    CHECK(gap <= 4.0 * se);
    CHECK(result.ratio_eq41 > 0.0);
    CHECK(result.ratio_eq41 <= 1.0 + 1e-9);
}

TEST_CASE("second-moment ratio exceeds one half at desk scale") {
    // Small beta keeps the paired term close to E[Z1]^2, so the
    // Cauchy-Schwarz ratio n^2 E[Z1]^2 / (n E[Z1^2] + n(n-1) E[Z1 Z2])
    // stays above 1/2.
    SecondMomentPlan plan;
    plan.n = 10000;
    plan.beta = 0.5;
    plan.replicas = 1500;
    plan.master_seed = 271828;
    plan.workers = 2;
    const auto result = run_second_moment(plan);
    CHECK(result.ratio_eq41 > 0.5);
    CHECK(result.ratio_eq41 <= 1.0 + 1e-9);
}

TEST_CASE("union-bound experiment: coverage and degenerate threshold") {
    UnionBoundPlan plan;
    plan.n = 400;
    plan.beta = 0.7;
    plan.replicas = 300;
    plan.master_seed = 31;
    plan.workers = 2;
    const auto result = run_union_bound(plan);
    CHECK(result.interval_count == 7);  // floor(400^{1/3})
    // the pieces cover [0,1]: interval hits iff the sup exceeds, per replica
    CHECK(result.coverage_mismatches == 0);
    CHECK(result.interval_frequency.size() == result.interval_count);
    // stationarity: per-interval frequencies comparable to each other
    for (const auto& f : result.interval_frequency) CHECK(f.value <= 1.0);

    // threshold beyond n: nothing fires
    plan.beta = 1e9;
    const auto empty = run_union_bound(plan);
    CHECK(empty.any_exceed.value == 0.0);
    CHECK(empty.mean_exceed_count == 0.0);
}

TEST_CASE("union-bound per-interval frequency vs supercritical static tail") {
    // P(exists t in piece with |L| > thr) <= P_{n, 1/n + n^{-4/3}}(L > thr):
    // compare against the tail experiment at lambda = 1.
    const Vertex n = 400;
    const double beta = 0.75;
    UnionBoundPlan plan;
    plan.n = n;
    plan.beta = beta;
    plan.replicas = 2500;
    plan.master_seed = 8123;
    plan.workers = 2;
    const auto ub = run_union_bound(plan);

    const double threshold = beta * sup_unit(n);
    TailPlan tails;
    tails.n_values = {n};
    tails.lambda = 1.0;
    tails.thresholds = {threshold / std::pow(static_cast<double>(n), 2.0 / 3.0)};
    tails.replicas = 20000;
    tails.master_seed = 9001;
    tails.workers = 2;
    const auto stat = run_tail_experiment(tails);
    const double bound = stat.entries[0].cells[0].largest_emp.value;
    const double bound_se = stat.entries[0].cells[0].largest_emp.stderr_;

    for (std::size_t i = 0; i < ub.interval_frequency.size(); ++i) {
        const auto& f = ub.interval_frequency[i];
        CHECK(f.value <= bound + 4.0 * std::hypot(f.stderr_, bound_se));
    }
}

TEST_CASE("sup t=0 exceedance agrees with the static tail experiment") {
    const Vertex n = 600;
    SupPlan plan;
    plan.n_values = {n};
    plan.betas = {0.8};
    plan.replicas = 1500;
    plan.master_seed = 12;
    plan.workers = 2;
    const auto sup = run_sup_experiment(plan);
    const double unit_threshold = 0.8;  // in sup units
    double exceed0 = 0.0;
    for (double t0 : sup.entries[0].normalized_t0)
        if (t0 >= unit_threshold) exceed0 += 1.0;
    exceed0 /= static_cast<double>(plan.replicas);
    const double se0 = std::sqrt(exceed0 * (1 - exceed0) / static_cast<double>(plan.replicas));

    TailPlan tails;
    tails.n_values = {n};
    tails.lambda = 0.0;
    tails.thresholds = {unit_threshold * sup_unit(n) /
                        std::pow(static_cast<double>(n), 2.0 / 3.0)};
    tails.replicas = 20000;
    tails.master_seed = 13;
    tails.workers = 2;
    const auto stat = run_tail_experiment(tails);
    const auto& cell = stat.entries[0].cells[0];
    CHECK(std::fabs(exceed0 - cell.largest_emp.value) <=
          4.0 * std::hypot(se0, cell.largest_emp.stderr_));
}

TEST_CASE("reveal experiment pools and scales") {
    RevealPlan plan;
    plan.n_values = {200, 500};
    plan.a = 1.0;
    plan.replicas = 1500;
    plan.master_seed = 77;
    plan.workers = 2;
    const auto result = run_reveal_experiment(plan);
    REQUIRE(result.entries.size() == 2);
    for (const auto& entry : result.entries) {
        CHECK(entry.N == static_cast<std::uint32_t>(
                              std::ceil(std::pow(static_cast<double>(entry.n), 2.0 / 3.0))));
        CHECK(entry.off_hub_frequency.value > 0.0);
        CHECK(entry.hub_frequency == doctest::Approx(1.0));  // N >= 2 processes the hub
        CHECK(entry.scaled_off_hub ==
              doctest::Approx(entry.off_hub_frequency.value *
                              std::pow(static_cast<double>(entry.n), 2.0 / 3.0)));
    }
    // decreasing pooled frequency with n
    CHECK(result.entries[1].off_hub_frequency.value <
          result.entries[0].off_hub_frequency.value);

    // determinism across worker counts
    plan.workers = 3;
    const auto again = run_reveal_experiment(plan);
    for (std::size_t e = 0; e < result.entries.size(); ++e) {
        CHECK(result.entries[e].off_hub_frequency.value ==
              again.entries[e].off_hub_frequency.value);
        CHECK(result.entries[e].decision_frequency.value ==
              again.entries[e].decision_frequency.value);
    }
}
