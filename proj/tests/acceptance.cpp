// Acceptance suite: ten numbered end-to-end checks covering the exact
// spectral identities, the dynamics law, tail reproduction, sup-size
// scaling trends, noise sensitivity, revealment scaling, and CLI
// determinism. Prints one [PASS]/[FAIL] line per criterion.
//
// Usage: acceptance [--only K] [--cli PATH] [--workers W]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dyner/component_view.hpp"
#include "dyner/dynamics.hpp"
#include "dyner/experiments.hpp"
#include "dyner/revealment.hpp"
#include "dyner/spectral.hpp"
#include "dyner/stats.hpp"

using namespace dyner;

namespace {

struct Criterion {
    int id;
    std::string summary;
    std::function<bool(std::string&)> body;
};

std::string g_cli_path;
unsigned g_workers = std::max(1u, std::thread::hardware_concurrency());

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = g_cli_path + " " + args + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

// ---- criterion 1: exact spectral identity battery ------------------------

bool criterion_spectral(std::string& detail) {
    using namespace dyner::spectral;
    double worst = 0.0;
    Rng rng(101);
    for (double p : {0.1, 0.25, 0.5}) {
        const std::uint32_t m = 8;
        const std::uint32_t size = 1u << m;
        // orthonormality, once per p
        std::vector<double> chi(static_cast<std::size_t>(size) * size);
        for (std::uint32_t s = 0; s < size; ++s)
            for (std::uint32_t w = 0; w < size; ++w) {
                double prod = 1.0;
                for (std::uint32_t b = 0; b < m; ++b)
                    if (s & (1u << b)) prod *= basis_value((w >> b) & 1u, p);
                chi[static_cast<std::size_t>(s) * size + w] = prod;
            }
        std::vector<double> weight(size);
        for (std::uint32_t w = 0; w < size; ++w) weight[w] = mask_probability(w, m, p);
        for (std::uint32_t s1 = 0; s1 < size; ++s1)
            for (std::uint32_t s2 = s1; s2 < size; ++s2) {
                double e = 0.0;
                for (std::uint32_t w = 0; w < size; ++w)
                    e += weight[w] * chi[static_cast<std::size_t>(s1) * size + w] *
                         chi[static_cast<std::size_t>(s2) * size + w];
                worst = std::max(worst, std::fabs(e - (s1 == s2 ? 1.0 : 0.0)));
            }

        // 100 random pairs: mean, reconstruction, Plancherel, noise identity
        for (int trial = 0; trial < 100; ++trial) {
            const auto f = random_function(m, p, rng);
            const auto g = random_function(m, p, rng);
            const auto fhat = transform(f);
            const auto ghat = transform(g);
            worst = std::max(worst, std::fabs(f.expectation() - fhat.coeffs[0]));
            for (std::uint32_t w = 0; w < size; ++w) {
                double rec = 0.0;
                for (std::uint32_t s = 0; s < size; ++s)
                    rec += fhat.coeffs[s] * chi[static_cast<std::size_t>(s) * size + w];
                worst = std::max(worst, std::fabs(rec - f[w]));
            }
            double dot = 0.0, efg = 0.0;
            for (std::uint32_t s = 0; s < size; ++s) dot += fhat.coeffs[s] * ghat.coeffs[s];
            for (std::uint32_t w = 0; w < size; ++w) efg += weight[w] * f[w] * g[w];
            worst = std::max(worst, std::fabs(dot - efg));
            for (int i = 0; i <= 10; ++i) {
                const double eps = i / 10.0;
                worst = std::max(worst,
                                 std::fabs(noise_expectation_spectral(fhat, ghat, eps) -
                                           noise_expectation_exact(f, g, eps)));
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |diff| = %.3e (tol 1e-10)", worst);
    detail = buf;
    return worst < 1e-10;
}

// ---- criterion 2: pivotality identity -------------------------------------

bool criterion_pivotality(std::string& detail) {
    using namespace dyner::spectral;
    Rng rng(202);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint32_t m = 2 + static_cast<std::uint32_t>(uniform_below(rng, 7));
        const double p = (trial % 3 == 0) ? 0.1 : (trial % 3 == 1 ? 0.25 : 0.5);
        const auto f = random_increasing_indicator(m, p, rng);
        const auto g = random_increasing_indicator(m, p, rng);
        for (std::uint32_t e = 0; e < m; ++e)
            worst = std::max(worst, pivotal_identity_check(f, g, e).abs_diff);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |diff| = %.3e over 100 pairs (tol 1e-10)", worst);
    detail = buf;
    return worst < 1e-10;
}

// ---- criterion 3: revealment bound on K_4 and K_5 -------------------------

bool criterion_revealment_bound(std::string& detail) {
    using namespace dyner::spectral;
    bool all_hold = true;
    double worst_margin = 1e300;
    int checks = 0;
    for (Vertex n : {4u, 5u}) {
        const std::uint32_t m = static_cast<std::uint32_t>(EdgeSpace(n).slot_count());
        const std::uint32_t hub = revealment::hub_mask(n, 1);
        for (double p : {1.0 / n, 0.25}) {
            for (std::uint32_t N = 2; N <= n; ++N) {
                const auto f = revealment::component_indicator_table(n, N, p, 1);
                const auto exact = revealment::revealment_exact(n, p, 1, N);
                for (std::uint32_t k = 1; k <= m; ++k) {
                    const auto res =
                        revealment_bound_check(f, exact.edge_probability, hub, k);
                    ++checks;
                    if (!res.holds) all_hold = false;
                    worst_margin = std::min(worst_margin, res.rhs - res.lhs);
                }
            }
        }
    }
    char buf[112];
    std::snprintf(buf, sizeof buf, "%d (n,p,N,k) checks, min(rhs-lhs) = %.3e", checks,
                  worst_margin);
    detail = buf;
    return all_hold;
}

// ---- criterion 4: FKG comparison ------------------------------------------

bool criterion_fkg(std::string& detail) {
    using namespace dyner::spectral;
    Rng rng(404);
    int failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint32_t m = 2 + static_cast<std::uint32_t>(uniform_below(rng, 5));
        const double p = (trial % 3 == 0) ? 0.1 : (trial % 3 == 1 ? 0.25 : 0.5);
        const auto f = random_increasing_function(m, p, rng);
        const auto h = random_increasing_function(m, p, rng);
        std::vector<double> gv(f.values());
        for (std::uint32_t w = 0; w < (1u << m); ++w) gv[w] += h[w];
        const FunctionTable g(m, p, std::move(gv));
        for (int i = 0; i <= 10; ++i)
            if (!fkg_noise_check(f, g, i / 10.0)) ++failures;
    }
    detail = "violations: " + std::to_string(failures) + " / 1100 (instance, eps) checks";
    return failures == 0;
}

// ---- criterion 5: dynamics law --------------------------------------------

bool criterion_dynamics_law(std::string& detail) {
    const Vertex n = 10000;
    const std::uint64_t reps = 10000;

    struct Rep {
        std::uint64_t at0, at1, events;
    };
    auto replicas = experiments::parallel_replicas<Rep>(
        reps, g_workers, [] { return 0; },
        [&](int&, std::uint64_t r) {
            Rng rng(replica_seed(505, 0, r));
            const auto traj = dynamics::simulate_trajectory(n, 1.0, rng);
            return Rep{traj.largest_path.front().value, traj.largest_at(1.0),
                       traj.events.size()};
        });

    std::vector<std::uint64_t> at0(reps), at1(reps);
    std::vector<double> events(reps);
    for (std::uint64_t r = 0; r < reps; ++r) {
        at0[r] = replicas[r].at0;
        at1[r] = replicas[r].at1;
        events[r] = static_cast<double>(replicas[r].events);
    }
    const auto two_sample = stats::chi_square_two_sample(at0, at1);
    const bool stationary = two_sample.p_value > 0.01;

    const auto ev = stats::moments(events);
    const double expected = (n - 1) * (1.0 - 1.0 / n);
    const bool event_mean_ok = std::fabs(ev.mean - expected) < 3.0 * ev.stderr_of_mean;

    // incremental view vs recomputation across 10^4 random flip sequences
    Rng rng(50505);
    std::uint64_t mismatches = 0;
    for (int seq = 0; seq < 10000; ++seq) {
        const Vertex nn = 2 + static_cast<Vertex>(uniform_below(rng, 199));
        Configuration cfg = sample_er(nn, 1.5 / nn, rng);
        auto view = components(cfg);
        const int flips = 1 + static_cast<int>(uniform_below(rng, 48));
        for (int f = 0; f < flips; ++f) {
            const EdgeSlot slot = uniform_below(rng, cfg.space().slot_count());
            apply_flip(cfg, view, slot, !cfg.has(slot));
        }
        if (!view.same_partition(components(cfg))) ++mismatches;
    }

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "stationarity p = %.3f; events %.1f vs %.1f (se %.2f); view mismatches %llu",
                  two_sample.p_value, ev.mean, expected, ev.stderr_of_mean,
                  static_cast<unsigned long long>(mismatches));
    detail = buf;
    return stationary && event_mean_ok && mismatches == 0;
}

// ---- criterion 6: tail reproduction ----------------------------------------

bool criterion_tails(std::string& detail) {
    experiments::TailPlan plan;
    plan.n_values = {10000, 100000};
    plan.lambda = 0.0;
    plan.thresholds = {1.0, 1.2, 1.5};
    plan.replicas = 100000;
    plan.master_seed = 606;
    plan.workers = g_workers;
    const auto result = experiments::run_tail_experiment(plan);

    bool bands_ok = true;
    std::ostringstream ss;
    for (const auto& cell : result.entries[1].cells) {  // n = 1e5
        if (!(cell.component_ratio.value >= 0.6 && cell.component_ratio.value <= 1.6))
            bands_ok = false;
        ss << "A=" << cell.A << " ratio=" << cell.component_ratio.value << " ";
    }

    // stability between n = 1e4 and 1e5 at A = 1.2 within 4 combined SEs
    const auto& small_cell = result.entries[0].cells[1];
    const auto& large_cell = result.entries[1].cells[1];
    const double gap = std::fabs(small_cell.component_ratio.value -
                                 large_cell.component_ratio.value);
    const double se =
        std::hypot(small_cell.component_ratio.stderr_, large_cell.component_ratio.stderr_);
    const bool stable = gap <= 4.0 * se;
    ss << "| stability gap=" << gap << " (4se=" << 4.0 * se << ")";
    detail = ss.str();
    return bands_ok && stable;
}

// ---- criterion 7: sup trend -------------------------------------------------

bool criterion_sup_trend(std::string& detail) {
    experiments::SupPlan plan;
    plan.n_values = {1000, 10000, 100000};
    plan.betas = {0.9, 1.5};
    // The beta = 1.5 decrements are a few 1e-3 per decade of n, so the grid
    // needs enough trajectories to resolve them (floor is 200 per n).
    plan.replicas_per_n = {4000, 4000, 1200};
    plan.master_seed = 707;
    plan.workers = g_workers;
    const auto result = experiments::run_sup_experiment(plan);

    bool medians_ok = true;
    std::ostringstream ss;
    ss << "medians:";
    for (const auto& entry : result.entries) {
        if (!(entry.median >= 0.5 && entry.median <= 2.5)) medians_ok = false;
        ss << " " << entry.median;
    }

    auto exceed = [&](std::size_t entry, std::size_t beta_idx) {
        return result.entries[entry].exceed[beta_idx].second;
    };
    bool low_beta_up = true, high_beta_down = true;
    for (std::size_t e = 1; e < result.entries.size(); ++e) {
        const auto prev_low = exceed(e - 1, 0), cur_low = exceed(e, 0);
        if (cur_low.value < prev_low.value - std::hypot(prev_low.stderr_, cur_low.stderr_))
            low_beta_up = false;
        const auto prev_high = exceed(e - 1, 1), cur_high = exceed(e, 1);
        if (cur_high.value > prev_high.value + std::hypot(prev_high.stderr_, cur_high.stderr_))
            high_beta_down = false;
    }
    ss << "; P(>0.9):";
    for (std::size_t e = 0; e < 3; ++e) ss << " " << exceed(e, 0).value;
    ss << "; P(>1.5):";
    for (std::size_t e = 0; e < 3; ++e) ss << " " << exceed(e, 1).value;
    detail = ss.str();
    return medians_ok && low_beta_up && high_beta_down;
}

// ---- criterion 8: noise sensitivity ----------------------------------------

bool criterion_noise(std::string& detail) {
    const Vertex n = 10000;
    const double nd = static_cast<double>(n);
    const double eps_small = std::pow(nd, -2.0 / 3.0);
    const double eps_mid = std::pow(nd, -1.0 / 8.0);
    experiments::NoisePlan plan;
    plan.n = n;
    plan.a = 1.0;
    plan.eps_values = {0.0, eps_small, std::pow(nd, -1.0 / 3.0), eps_mid, 1.0};
    plan.replicas = 10000;
    plan.master_seed = 808;
    plan.workers = g_workers;
    const auto result = experiments::run_noise_sensitivity(plan);

    const auto& at0 = result.cells[0];
    const auto& small = result.cells[1];
    const auto& mid = result.cells[3];
    const auto& at1 = result.cells[4];

    const bool indep_ok = std::fabs(at1.cov_f.value) <= 4.0 * at1.cov_f.stderr_;
    const double small_gap = std::fabs(small.cov_f.value - at0.cov_f.value);
    const double small_band = 4.0 * std::hypot(small.cov_f.stderr_, at0.cov_f.stderr_);
    const bool small_ok = small_gap <= small_band;
    const double drop = small.cov_f.value - mid.cov_f.value;
    const double drop_se = std::hypot(small.cov_f.stderr_, mid.cov_f.stderr_);
    const bool drop_ok = drop >= 4.0 * drop_se;
    bool fkg_ok = true;
    for (const auto& cell : result.cells)
        if (cell.cov_f.value > cell.cov_g.value + 4.0 * cell.diff_se) fkg_ok = false;

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "cov(0)=%.4f cov(n^-2/3)=%.4f cov(n^-1/8)=%.4f cov(1)=%.4f; "
                  "var-vs-small gap %.4f vs band %.4f "
                  "[indep %d, small %d, drop %d, fkg %d]",
                  at0.cov_f.value, small.cov_f.value, mid.cov_f.value, at1.cov_f.value,
                  small_gap, small_band, indep_ok, small_ok, drop_ok, fkg_ok);
    detail = buf;
    return indep_ok && small_ok && drop_ok && fkg_ok;
}

// ---- criterion 9: revealment scaling ----------------------------------------

bool criterion_reveal_scaling(std::string& detail) {
    experiments::RevealPlan plan;
    plan.n_values = {1000, 10000};
    plan.a = 1.0;
    plan.replicas = 10000;
    plan.master_seed = 909;
    plan.workers = g_workers;
    const auto result = experiments::run_reveal_experiment(plan);
    const double c1 = result.entries[0].scaled_off_hub;
    const double c2 = result.entries[1].scaled_off_hub;
    const double spread = std::max(c1, c2) / std::min(c1, c2);
    char buf[120];
    std::snprintf(buf, sizeof buf, "n^{2/3} x off-hub freq: %.3f (n=1e3) vs %.3f (n=1e4), x%.2f",
                  c1, c2, spread);
    detail = buf;
    return spread < 2.0;
}

// ---- criterion 10: CLI determinism -----------------------------------------

bool criterion_cli_determinism(std::string& detail) {
    if (g_cli_path.empty()) {
        detail = "no --cli path provided";
        return false;
    }
    struct Invocation {
        const char* name;
        const char* args;
        const char* out;
    };
    const Invocation cases[] = {
        {"sup", "sup --n 1000 --reps 100 --beta 0.9 --seed 42", "/tmp/acc_sup"},
        {"tails", "tails --n 2000 --reps 2000 --A 1.0 --seed 43", "/tmp/acc_tails"},
        {"noise", "noise --n 1000 --reps 400 --seed 44", "/tmp/acc_noise"},
        {"reveal", "reveal --n 500 --reps 500 --seed 45", "/tmp/acc_rev"},
        {"spectral-check", "spectral-check --m 6 --p 0.25 --seed 7", "/tmp/acc_spec"},
    };
    for (const auto& c : cases) {
        const std::string out = c.out;
        const std::string one = std::string(c.args) + " --workers 1 --out " + out;
        if (run_cli(one) != 0) {
            detail = std::string("CLI run failed for ") + c.name;
            return false;
        }
        const std::string first = slurp(out);
        if (run_cli(std::string(c.args) + " --workers 4 --out " + out) != 0 ||
            slurp(out) != first) {
            detail = std::string("byte mismatch across worker counts for ") + c.name;
            return false;
        }
        if (run_cli(one) != 0 || slurp(out) != first) {
            detail = std::string("byte mismatch across repeated runs for ") + c.name;
            return false;
        }
        if (first.empty()) {
            detail = std::string("empty output for ") + c.name;
            return false;
        }
    }
    detail = "5 commands byte-identical across runs and workers {1,4}";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
        if (arg == "--cli" && i + 1 < argc) g_cli_path = argv[++i];
        if (arg == "--workers" && i + 1 < argc) g_workers = std::atoi(argv[++i]);
    }

    const std::vector<Criterion> criteria = {
        {1, "exact spectral suite (m<=8, p in {0.1,0.25,0.5}, 100 pairs)", criterion_spectral},
        {2, "pivotality identity (100 jointly monotone Boolean pairs)", criterion_pivotality},
        {3, "revealment bound on K_4 and K_5 (full enumeration)", criterion_revealment_bound},
        {4, "FKG noise comparison (100 instances, 11-point eps grid)", criterion_fkg},
        {5, "dynamics law: stationarity, event count, incremental view", criterion_dynamics_law},
        {6, "tail reproduction at lambda=0 (bands and n-stability)", criterion_tails},
        {7, "sup-size trend over n in {1e3,1e4,1e5}", criterion_sup_trend},
        {8, "noise sensitivity of the sup-size indicator", criterion_noise},
        {9, "revealment scaling R ~ n^{-2/3}", criterion_reveal_scaling},
        {10, "CLI determinism across runs and worker counts", criterion_cli_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool pass = false;
        try {
            pass = c.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %s -- %s (%.1fs)\n", pass ? "PASS" : "FAIL", c.id,
                    c.summary.c_str(), detail.c_str(), secs);
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
