#include "dyner/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>

#include "dyner/asymptotics.hpp"
#include "dyner/revealment.hpp"
#include "dyner/stats.hpp"
#include "dyner/union_find.hpp"

namespace dyner::experiments {

double sup_unit(std::uint64_t n) {
    const double nd = static_cast<double>(n);
    return std::pow(nd, 2.0 / 3.0) * std::cbrt(std::log(nd));
}

namespace {

Estimate frequency_estimate(double count, std::uint64_t reps) {
    const double r = static_cast<double>(reps);
    const double p = count / r;
    return {p, std::sqrt(std::max(p * (1.0 - p), 0.0) / r)};
}

// Paired sample covariance with an influence-function standard error:
// cov = (1/(R-1)) sum (x_r - xbar)(y_r - ybar), se = sd((x-xbar)(y-ybar))/sqrt(R).
struct Covariance {
    double cov = 0.0;
    double se = 0.0;
    std::vector<double> influence;  // centered products, one per replica
};

Covariance paired_covariance(std::span<const double> x, std::span<const double> y) {
    const std::size_t r = x.size();
    Covariance c;
    c.influence.resize(r);
    double xbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        xbar += x[i];
        ybar += y[i];
    }
    xbar /= static_cast<double>(r);
    ybar /= static_cast<double>(r);
    double sum = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        c.influence[i] = (x[i] - xbar) * (y[i] - ybar);
        sum += c.influence[i];
    }
    c.cov = sum / static_cast<double>(r - 1);
    const auto m = stats::moments(c.influence);
    c.se = m.stderr_of_mean;
    return c;
}

// Worker-local workspace for static census replicas.
struct CensusCtx {
    EpochUnionFind uf;
    std::vector<EdgeSlot> slots;
    explicit CensusCtx(Vertex n) : uf(n) {}
};

// Feeds a sorted slot list through the union-find.
void unite_slots(EpochUnionFind& uf, const EdgeSpace& space,
                 std::span<const EdgeSlot> slots) {
    AscendingEdgeDecoder decoder(space);
    for (EdgeSlot s : slots) {
        const auto [u, v] = decoder.decode(s);
        uf.unite(u, v);
    }
}

}  // namespace

// --- sup -------------------------------------------------------------

SupResult run_sup_experiment(const SupPlan& plan) {
    if (!plan.replicas_per_n.empty() && plan.replicas_per_n.size() != plan.n_values.size())
        throw std::invalid_argument("run_sup_experiment: replicas_per_n size mismatch");
    for (Vertex n : plan.n_values)
        if (n < 100) throw std::invalid_argument("run_sup_experiment: n must be >= 100");

    SupResult result;
    result.plan = plan;
    for (std::size_t cell = 0; cell < plan.n_values.size(); ++cell) {
        const Vertex n = plan.n_values[cell];
        const std::uint64_t cell_replicas =
            plan.replicas_per_n.empty() ? plan.replicas : plan.replicas_per_n[cell];
        if (cell_replicas < 1) throw std::invalid_argument("run_sup_experiment: no replicas");
        const double unit = sup_unit(n);
        struct Rep {
            double sup_norm;
            double t0_norm;
        };
        auto reps = parallel_replicas<Rep>(
            cell_replicas, plan.workers, [] { return 0; },
            [&](int&, std::uint64_t r) {
                Rng rng(replica_seed(plan.master_seed, cell, r));
                const auto traj = dynamics::simulate_trajectory(n, plan.horizon, rng);
                return Rep{traj.sup_largest() / unit, traj.largest_path.front().value / unit};
            });

        SupEntry entry;
        entry.n = n;
        entry.replicas = cell_replicas;
        entry.normalized_sup.reserve(reps.size());
        entry.normalized_t0.reserve(reps.size());
        for (const auto& rep : reps) {
            entry.normalized_sup.push_back(rep.sup_norm);
            entry.normalized_t0.push_back(rep.t0_norm);
        }
        for (double beta : plan.betas) {
            double count = 0.0;
            for (double s : entry.normalized_sup)
                if (s > beta) count += 1.0;
            entry.exceed.emplace_back(beta, frequency_estimate(count, cell_replicas));
        }
        entry.mean = stats::moments(entry.normalized_sup).mean;
        entry.median = stats::quantile(entry.normalized_sup, 0.5);
        entry.q25 = stats::quantile(entry.normalized_sup, 0.25);
        entry.q75 = stats::quantile(entry.normalized_sup, 0.75);
        result.entries.push_back(std::move(entry));
    }
    return result;
}

// --- tails -------------------------------------------------------------

TailResult run_tail_experiment(const TailPlan& plan) {
    if (plan.replicas < 1) throw std::invalid_argument("run_tail_experiment: no replicas");
    TailResult result;
    result.plan = plan;
    for (std::size_t cell = 0; cell < plan.n_values.size(); ++cell) {
        const Vertex n = plan.n_values[cell];
        const double p = asymptotics::lambda_to_p(n, plan.lambda);
        if (p <= 0.0 || p >= 1.0)
            throw std::invalid_argument("run_tail_experiment: lambda pushes p outside (0,1)");
        const EdgeSpace space(n);

        struct Rep {
            std::uint32_t c1;
            std::uint32_t largest;
        };
        auto reps = parallel_replicas<Rep>(
            plan.replicas, plan.workers, [&] { return std::make_unique<CensusCtx>(n); },
            [&](std::unique_ptr<CensusCtx>& ctx, std::uint64_t r) {
                Rng rng(replica_seed(plan.master_seed, cell, r));
                ctx->slots.clear();
                sample_er_slots(n, p, rng, [&](EdgeSlot s) { ctx->slots.push_back(s); });
                ctx->uf.reset();
                unite_slots(ctx->uf, space, ctx->slots);
                return Rep{ctx->uf.component_size(1), ctx->uf.max_size()};
            });

        TailEntry entry;
        entry.n = n;
        entry.replicas = plan.replicas;
        const double n23 = std::pow(static_cast<double>(n), 2.0 / 3.0);
        for (double A : plan.thresholds) {
            const double threshold = A * n23;
            double c_count = 0.0, l_count = 0.0;
            for (const auto& rep : reps) {
                if (rep.c1 >= threshold) c_count += 1.0;
                if (rep.largest >= threshold) l_count += 1.0;
            }
            TailCell cellres;
            cellres.A = A;
            cellres.component_emp = frequency_estimate(c_count, plan.replicas);
            cellres.largest_emp = frequency_estimate(l_count, plan.replicas);
            const asymptotics::TailQuery q{n, plan.lambda, A, 0};
            try {
                cellres.component_formula = asymptotics::pittel_component_tail(q).value;
                cellres.largest_formula = asymptotics::pittel_largest_tail(q).value;
                cellres.component_ratio = {
                    cellres.component_emp.value / cellres.component_formula,
                    cellres.component_emp.stderr_ / cellres.component_formula};
                cellres.largest_ratio = {cellres.largest_emp.value / cellres.largest_formula,
                                         cellres.largest_emp.stderr_ / cellres.largest_formula};
            } catch (const std::domain_error&) {
                // Formula degenerates where G'_lambda(A) <= 0; empirical
                // columns still stand.
                const double nan = std::numeric_limits<double>::quiet_NaN();
                cellres.component_formula = nan;
                cellres.largest_formula = nan;
                cellres.component_ratio = {nan, nan};
                cellres.largest_ratio = {nan, nan};
            }
            entry.cells.push_back(cellres);
        }
        result.entries.push_back(std::move(entry));
    }
    return result;
}

// --- noise sensitivity ---------------------------------------------------

NoiseResult run_noise_sensitivity(const NoisePlan& plan) {
    if (plan.replicas < 2) throw std::invalid_argument("run_noise_sensitivity: need replicas");
    if (plan.a <= 0.0) throw std::invalid_argument("run_noise_sensitivity: a must be > 0");
    const Vertex n = plan.n;
    const double p = 1.0 / static_cast<double>(n);
    const EdgeSpace space(n);
    const double threshold = plan.a * std::pow(static_cast<double>(n), 2.0 / 3.0);

    NoiseResult result;
    result.plan = plan;
    for (std::size_t cell = 0; cell < plan.eps_values.size(); ++cell) {
        const double eps = plan.eps_values[cell];
        if (eps < 0.0 || eps > 1.0)
            throw std::invalid_argument("run_noise_sensitivity: eps outside [0,1]");

        struct Rep {
            double f, f_eps, g, g_eps;
        };
        auto reps = parallel_replicas<Rep>(
            plan.replicas, plan.workers, [&] { return std::make_unique<CensusCtx>(n); },
            [&](std::unique_ptr<CensusCtx>& ctx, std::uint64_t r) {
                Rng rng(replica_seed(plan.master_seed, cell, r));
                ctx->slots.clear();
                sample_er_slots(n, p, rng, [&](EdgeSlot s) { ctx->slots.push_back(s); });

                auto census = [&](std::span<const EdgeSlot> slots, double& f, double& g) {
                    ctx->uf.reset();
                    unite_slots(ctx->uf, space, slots);
                    f = ctx->uf.max_size() >= threshold ? 1.0 : 0.0;
                    double in_large = 0.0;
                    ctx->uf.for_each_touched_component([&](std::uint32_t size) {
                        if (size >= threshold) in_large += size;
                    });
                    g = in_large / threshold;
                };

                Rep rep{};
                census(ctx->slots, rep.f, rep.g);
                const auto resampled = dynamics::resample_slots(
                    ctx->slots, space.slot_count(), eps, p, rng);
                census(resampled, rep.f_eps, rep.g_eps);
                return rep;
            });

        std::vector<double> f(reps.size()), f2(reps.size()), g(reps.size()), g2(reps.size());
        for (std::size_t i = 0; i < reps.size(); ++i) {
            f[i] = reps[i].f;
            f2[i] = reps[i].f_eps;
            g[i] = reps[i].g;
            g2[i] = reps[i].g_eps;
        }
        const auto cf = paired_covariance(f, f2);
        const auto cg = paired_covariance(g, g2);
        std::vector<double> diff(reps.size());
        for (std::size_t i = 0; i < reps.size(); ++i)
            diff[i] = cg.influence[i] - cf.influence[i];

        NoiseCell out;
        out.eps = eps;
        out.cov_f = {cf.cov, cf.se};
        out.cov_g = {cg.cov, cg.se};
        out.diff_se = stats::moments(diff).stderr_of_mean;
        out.mean_f = stats::moments(f).mean;
        result.cells.push_back(std::move(out));
    }
    return result;
}

// --- second moment -------------------------------------------------------

SecondMomentResult run_second_moment(const SecondMomentPlan& plan) {
    if (plan.replicas < 2) throw std::invalid_argument("run_second_moment: need replicas");
    const double unit = sup_unit(plan.n);
    dynamics::SizeInterval interval{
        static_cast<std::uint64_t>(std::ceil(plan.beta * unit)),
        static_cast<std::uint64_t>(std::floor(2.0 * plan.beta * unit))};
    if (interval.lo > interval.hi)
        throw std::invalid_argument("run_second_moment: empty size window");

    const Vertex probes[2] = {1, 2};
    struct Rep {
        double z1, z2, z1z2, z1sq, z2sq, static1;
    };
    auto reps = parallel_replicas<Rep>(
        plan.replicas, plan.workers, [] { return 0; },
        [&](int&, std::uint64_t r) {
            Rng rng(replica_seed(plan.master_seed, 0, r));
            const auto traj = dynamics::simulate_trajectory(plan.n, 1.0, rng, probes);
            const auto z = dynamics::z_statistics(traj, interval, 1, 2);
            Rep rep{};
            rep.z1 = z.z_u;
            rep.z2 = z.z_v;
            rep.z1z2 = z.z_uv;
            rep.z1sq = z.z_u_sq;
            rep.z2sq = z.z_v * z.z_v;
            rep.static1 = interval.contains(traj.probe_paths[0].front().value) ? 1.0 : 0.0;
            return rep;
        });

    // Vertex-exchangeable estimators: average the two probes.
    std::vector<double> z1(reps.size()), z1sq(reps.size()), z1z2(reps.size()),
        stat(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        z1[i] = 0.5 * (reps[i].z1 + reps[i].z2);
        z1sq[i] = 0.5 * (reps[i].z1sq + reps[i].z2sq);
        z1z2[i] = reps[i].z1z2;
        stat[i] = reps[i].static1;
    }
    SecondMomentResult result;
    result.plan = plan;
    result.interval = interval;
    const auto m1 = stats::moments(z1);
    const auto m2 = stats::moments(z1sq);
    const auto m12 = stats::moments(z1z2);
    const auto ms = stats::moments(stat);
    result.ez1 = {m1.mean, m1.stderr_of_mean};
    result.ez1_sq = {m2.mean, m2.stderr_of_mean};
    result.ez1z2 = {m12.mean, m12.stderr_of_mean};
    result.static_prob = {ms.mean, ms.stderr_of_mean};
    const double nd = static_cast<double>(plan.n);
    result.ratio_eq41 = nd * nd * m1.mean * m1.mean /
                        (nd * m2.mean + nd * (nd - 1.0) * m12.mean);
    return result;
}

// --- union bound -----------------------------------------------------------

UnionBoundResult run_union_bound(const UnionBoundPlan& plan) {
    if (plan.replicas < 1) throw std::invalid_argument("run_union_bound: no replicas");
    if (plan.n < 100) throw std::invalid_argument("run_union_bound: n must be >= 100");
    const double nd = static_cast<double>(plan.n);
    const std::uint32_t pieces = static_cast<std::uint32_t>(std::floor(std::cbrt(nd)));
    if (pieces > 64) throw std::invalid_argument("run_union_bound: n too large (needs n^{1/3} <= 64)");
    const double h = std::pow(nd, -1.0 / 3.0);
    const double threshold = plan.beta * sup_unit(plan.n);

    struct Rep {
        std::uint64_t mask;
        bool sup_exceed;
    };
    auto reps = parallel_replicas<Rep>(
        plan.replicas, plan.workers, [] { return 0; },
        [&](int&, std::uint64_t r) {
            Rng rng(replica_seed(plan.master_seed, 0, r));
            const auto traj = dynamics::simulate_trajectory(plan.n, 1.0, rng);
            Rep rep{0, traj.sup_largest() > threshold};
            const auto& path = traj.largest_path;
            for (std::size_t i = 0; i < path.size(); ++i) {
                if (path[i].value <= threshold) continue;
                const double s = path[i].time;
                const double e = (i + 1 < path.size()) ? path[i + 1].time : traj.horizon;
                std::uint32_t j = std::min<std::uint32_t>(
                    pieces - 1, static_cast<std::uint32_t>(s / h));
                for (; j < pieces; ++j) {
                    const double jstart = j * h;
                    const double jend = (j == pieces - 1) ? traj.horizon : (j + 1) * h;
                    if (jstart >= e) break;
                    if (jend > s) rep.mask |= 1ULL << j;
                }
            }
            return rep;
        });

    UnionBoundResult result;
    result.plan = plan;
    result.interval_count = pieces;
    std::vector<double> counts(pieces, 0.0);
    double any = 0.0, total = 0.0;
    for (const auto& rep : reps) {
        for (std::uint32_t j = 0; j < pieces; ++j)
            if (rep.mask & (1ULL << j)) counts[j] += 1.0;
        const bool hit = rep.mask != 0;
        if (hit) any += 1.0;
        total += static_cast<double>(std::popcount(rep.mask));
        if (hit != rep.sup_exceed) result.coverage_mismatches++;
    }
    for (std::uint32_t j = 0; j < pieces; ++j)
        result.interval_frequency.push_back(frequency_estimate(counts[j], plan.replicas));
    result.any_exceed = frequency_estimate(any, plan.replicas);
    result.mean_exceed_count = total / static_cast<double>(plan.replicas);
    return result;
}

// --- revealment scaling -----------------------------------------------------

RevealResult run_reveal_experiment(const RevealPlan& plan) {
    if (plan.replicas < 2) throw std::invalid_argument("run_reveal_experiment: need replicas");
    if (plan.a <= 0.0) throw std::invalid_argument("run_reveal_experiment: a must be > 0");
    RevealResult result;
    result.plan = plan;
    for (std::size_t cell = 0; cell < plan.n_values.size(); ++cell) {
        const Vertex n = plan.n_values[cell];
        const double n23 = std::pow(static_cast<double>(n), 2.0 / 3.0);
        const std::uint32_t N = static_cast<std::uint32_t>(std::ceil(plan.a * n23));
        const double p = 1.0 / static_cast<double>(n);
        const EdgeSpace space(n);
        const double off_count =
            static_cast<double>(space.slot_count() - (n - 1));

        struct Rep {
            double off_fraction;
            double hub;
            double decision;
        };
        auto reps = parallel_replicas<Rep>(
            plan.replicas, plan.workers, [] { return 0; },
            [&](int&, std::uint64_t r) {
                const auto stats_ = revealment::reveal_one_replica(
                    n, p, 1, N, replica_seed(plan.master_seed, cell, r));
                return Rep{stats_.off_hub_queried / off_count,
                           static_cast<double>(stats_.hub_queried),
                           stats_.decision ? 1.0 : 0.0};
            });

        std::vector<double> off(reps.size());
        double hub = 0.0, dec = 0.0;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            off[i] = reps[i].off_fraction;
            hub += reps[i].hub;
            dec += reps[i].decision;
        }
        RevealEntry entry;
        entry.n = n;
        entry.N = N;
        entry.replicas = plan.replicas;
        const auto m = stats::moments(off);
        entry.off_hub_frequency = {m.mean, m.stderr_of_mean};
        entry.scaled_off_hub = m.mean * n23;
        entry.hub_frequency = hub / (static_cast<double>(plan.replicas) * (n - 1));
        entry.decision_frequency = frequency_estimate(dec, plan.replicas);
        result.entries.push_back(entry);
    }
    return result;
}

}  // namespace dyner::experiments
