// dyner: event-driven simulation of the critical dynamical Erdős–Rényi
// graph, Monte Carlo experiments over it, and exact spectral checks for
// biased Boolean functions. One subcommand per experiment; every run writes
// a result file plus a manifest that suffices to reproduce it bit for bit.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dyner/dynamics.hpp"
#include "dyner/experiments.hpp"
#include "dyner/spectral_suite.hpp"
#include "dyner/table.hpp"

namespace {

constexpr const char* kVersion = "dyner 0.1.0";
constexpr int kExitBadParameter = 2;
constexpr int kExitUnwritable = 3;
constexpr int kExitCheckFailed = 4;

using nlohmann::ordered_json;

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct RunContext {
    std::string command;
    ordered_json parameters;
    std::uint64_t master_seed = 0;
    bool seed_from_entropy = false;
    std::string out_path;
    std::string format = "csv";
    std::string started_at;
    unsigned workers = 1;

    // Deterministic manifest subset: everything needed to re-run. The side
    // manifest file adds wall-clock timestamps on top.
    ordered_json manifest_core() const {
        ordered_json m;
        m["artifact_version"] = kVersion;
        m["command"] = command;
        m["parameters"] = parameters;
        m["master_seed"] = master_seed;
        m["seed_from_entropy"] = seed_from_entropy;
        m["outputs"] = {out_path};
        return m;
    }
};

void resolve_seed(const std::optional<std::uint64_t>& seed, RunContext& ctx) {
    if (seed) {
        ctx.master_seed = *seed;
        return;
    }
    std::random_device rd;
    ctx.master_seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    ctx.seed_from_entropy = true;
}

int write_manifest(const RunContext& ctx) {
    ordered_json manifest = ctx.manifest_core();
    manifest["workers"] = ctx.workers;
    manifest["started_at"] = ctx.started_at;
    manifest["finished_at"] = utc_timestamp();
    const std::string manifest_path = ctx.out_path + ".manifest.json";
    std::ofstream mf(manifest_path, std::ios::binary);
    if (!mf) {
        std::cerr << "dyner: cannot write manifest '" << manifest_path << "'\n";
        return kExitUnwritable;
    }
    mf << manifest.dump(2) << '\n';
    return 0;
}

int write_outputs(const RunContext& ctx, const dyner::ResultTable& table) {
    std::ofstream out(ctx.out_path, std::ios::binary);
    if (!out) {
        std::cerr << "dyner: cannot open output path '" << ctx.out_path << "' for writing\n";
        return kExitUnwritable;
    }
    if (ctx.format == "csv") {
        table.write_csv(out);
    } else {
        ordered_json doc;
        doc["manifest"] = ctx.manifest_core();
        doc["rows"] = ordered_json::parse(table.to_json_rows());
        out << doc.dump(2) << '\n';
    }
    out.close();
    return write_manifest(ctx);
}

dyner::ResultRow base_row(const RunContext& ctx, const std::string& statistic) {
    dyner::ResultRow row;
    row.experiment = ctx.command;
    row.statistic = statistic;
    row.seed = ctx.master_seed;
    return row;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"critical dynamical Erdős–Rényi simulator and spectral toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    const unsigned default_workers = std::max(1u, std::thread::hardware_concurrency());

    // Shared option storage; each subcommand registers the flags it uses.
    std::vector<std::uint64_t> n_values;
    std::uint64_t reps = 1000;
    std::optional<std::uint64_t> seed;
    std::vector<double> betas;
    std::vector<double> eps_values;
    double lambda = 0.0;
    double a_param = 1.0;
    std::vector<double> thresholds;
    double horizon = 1.0;
    std::string out_path;
    std::string format = "csv";
    unsigned workers = default_workers;
    std::uint64_t spectral_m = 6;
    double spectral_p = 0.25;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "master seed (default: system entropy)");
        cmd->add_option("--out", out_path, "output path (default: <command>.<format>)");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--workers", workers, "worker threads (never affects results)")
            ->check(CLI::Range(1u, 1024u));
    };

    CLI::App* simulate = app.add_subcommand("simulate", "one trajectory, events as CSV");
    simulate->add_option("--n", n_values, "vertex count")->required()->expected(1);
    simulate->add_option("--horizon", horizon, "time horizon")->check(CLI::PositiveNumber);
    add_common(simulate);

    CLI::App* sup = app.add_subcommand("sup", "sup-size exceedance over trajectories");
    sup->add_option("--n", n_values, "vertex counts (repeatable)")->required();
    sup->add_option("--beta", betas, "thresholds in n^{2/3} log^{1/3} n units (repeatable)");
    sup->add_option("--reps", reps, "trajectories per n");
    sup->add_option("--horizon", horizon, "time horizon")->check(CLI::PositiveNumber);
    add_common(sup);

    CLI::App* tails = app.add_subcommand("tails", "static component tails vs closed forms");
    tails->add_option("--n", n_values, "vertex counts (repeatable)")->required();
    tails->add_option("--lambda", lambda, "window parameter: p = 1/n + lambda n^{-4/3}");
    tails->add_option("--A", thresholds, "size thresholds in n^{2/3} units (repeatable)");
    tails->add_option("--reps", reps, "replicas per n");
    add_common(tails);

    CLI::App* noise = app.add_subcommand("noise", "noise sensitivity of the sup-size indicator");
    noise->add_option("--n", n_values, "vertex count")->required()->expected(1);
    noise->add_option("--a", a_param, "threshold in n^{2/3} units")->check(CLI::PositiveNumber);
    noise->add_option("--eps", eps_values, "resampling probabilities (repeatable)");
    noise->add_option("--reps", reps, "paired replicas per eps");
    add_common(noise);

    CLI::App* second = app.add_subcommand("second-moment", "occupation-time moments");
    second->add_option("--n", n_values, "vertex count")->required()->expected(1);
    second->add_option("--beta", betas, "window base in n^{2/3} log^{1/3} n units")->expected(1);
    second->add_option("--reps", reps, "trajectories");
    add_common(second);

    CLI::App* unionb = app.add_subcommand("union-bound", "per-subinterval exceedance tallies");
    unionb->add_option("--n", n_values, "vertex count")->required()->expected(1);
    unionb->add_option("--beta", betas, "threshold in n^{2/3} log^{1/3} n units")->expected(1);
    unionb->add_option("--reps", reps, "trajectories");
    add_common(unionb);

    CLI::App* reveal = app.add_subcommand("reveal", "BFS revealment frequencies by edge orbit");
    reveal->add_option("--n", n_values, "vertex counts (repeatable)")->required();
    reveal->add_option("--a", a_param, "N = ceil(a n^{2/3})")->check(CLI::PositiveNumber);
    reveal->add_option("--reps", reps, "replicas per n");
    add_common(reveal);

    CLI::App* spectral = app.add_subcommand("spectral-check", "exact identity battery");
    spectral->add_option("--m", spectral_m, "bit count")->check(CLI::Range(1, 8));
    spectral->add_option("--p", spectral_p, "bias");
    spectral->add_option("--reps", reps, "random function pairs");
    add_common(spectral);

    CLI11_PARSE(app, argc, argv);

    CLI::App* active = app.get_subcommands().front();
    RunContext ctx;
    ctx.command = active->get_name();
    ctx.format = format;
    ctx.started_at = utc_timestamp();
    ctx.workers = workers;
    resolve_seed(seed, ctx);
    ctx.out_path = out_path.empty() ? ctx.command + "." + format : out_path;

    try {
        dyner::ResultTable table;

        if (active == simulate) {
            const auto n = static_cast<dyner::Vertex>(n_values.front());
            if (n < 2) throw std::invalid_argument("simulate: n must be >= 2");
            ctx.parameters = {{"n", n}, {"horizon", horizon}};
            dyner::Rng rng(ctx.master_seed);
            const auto traj = dyner::dynamics::simulate_trajectory(n, horizon, rng);

            std::ofstream out(ctx.out_path, std::ios::binary);
            if (!out) {
                std::cerr << "dyner: cannot open output path '" << ctx.out_path << "'\n";
                return kExitUnwritable;
            }
            const dyner::EdgeSpace space(n);
            std::size_t path_idx = 0;
            if (ctx.format == "csv") {
                out << "time,edge_u,edge_v,new_state,largest\n";
                for (const auto& ev : traj.events) {
                    while (path_idx + 1 < traj.largest_path.size() &&
                           traj.largest_path[path_idx + 1].time <= ev.time)
                        ++path_idx;
                    const auto [u, v] = space.edge_pair(ev.slot);
                    out << dyner::format_double(ev.time) << ',' << u << ',' << v << ','
                        << (ev.new_state ? 1 : 0) << ',' << traj.largest_path[path_idx].value
                        << '\n';
                }
            } else {
                ordered_json doc;
                doc["manifest"] = ctx.manifest_core();
                ordered_json events = ordered_json::array();
                for (const auto& ev : traj.events) {
                    while (path_idx + 1 < traj.largest_path.size() &&
                           traj.largest_path[path_idx + 1].time <= ev.time)
                        ++path_idx;
                    const auto [u, v] = space.edge_pair(ev.slot);
                    events.push_back({{"time", ev.time},
                                      {"edge_u", u},
                                      {"edge_v", v},
                                      {"new_state", ev.new_state ? 1 : 0},
                                      {"largest", traj.largest_path[path_idx].value}});
                }
                doc["events"] = std::move(events);
                out << doc.dump(2) << '\n';
            }
            out.close();
            const int rc = write_manifest(ctx);
            if (rc != 0) return rc;
            std::cout << "simulate: " << traj.events.size() << " effective events -> "
                      << ctx.out_path << '\n';
            return 0;
        }

        if (active == sup) {
            if (betas.empty()) betas = {0.9, 1.5};
            dyner::experiments::SupPlan plan;
            for (auto n : n_values) plan.n_values.push_back(static_cast<dyner::Vertex>(n));
            plan.betas = betas;
            plan.replicas = reps;
            plan.master_seed = ctx.master_seed;
            plan.workers = workers;
            plan.horizon = horizon;
            ctx.parameters = {{"n", n_values},
                              {"beta", betas},
                              {"reps", reps},
                              {"horizon", horizon}};
            const auto result = dyner::experiments::run_sup_experiment(plan);
            for (const auto& entry : result.entries) {
                for (const auto& [beta, est] : entry.exceed) {
                    auto row = base_row(ctx, "exceed_prob");
                    row.n = entry.n;
                    row.beta = beta;
                    row.estimate = est.value;
                    row.stderr_ = est.stderr_;
                    row.replicas = entry.replicas;
                    table.rows.push_back(row);
                }
                const std::pair<const char*, double> quantiles[] = {{"sup_median", entry.median},
                                                                    {"sup_mean", entry.mean},
                                                                    {"sup_q25", entry.q25},
                                                                    {"sup_q75", entry.q75}};
                for (const auto& [name, value] : quantiles) {
                    auto row = base_row(ctx, name);
                    row.n = entry.n;
                    row.estimate = value;
                    row.replicas = entry.replicas;
                    table.rows.push_back(row);
                }
            }
        } else if (active == tails) {
            if (thresholds.empty()) thresholds = {1.0, 1.2, 1.5};
            dyner::experiments::TailPlan plan;
            for (auto n : n_values) plan.n_values.push_back(static_cast<dyner::Vertex>(n));
            plan.lambda = lambda;
            plan.thresholds = thresholds;
            plan.replicas = reps;
            plan.master_seed = ctx.master_seed;
            plan.workers = workers;
            ctx.parameters = {{"n", n_values},
                              {"lambda", lambda},
                              {"A", thresholds},
                              {"reps", reps}};
            const auto result = dyner::experiments::run_tail_experiment(plan);
            for (const auto& entry : result.entries) {
                for (const auto& cell : entry.cells) {
                    struct Item {
                        const char* name;
                        double value;
                        std::optional<double> se;
                    };
                    const Item items[] = {
                        {"component_tail_emp", cell.component_emp.value,
                         cell.component_emp.stderr_},
                        {"component_tail_formula", cell.component_formula, std::nullopt},
                        {"component_tail_ratio", cell.component_ratio.value,
                         cell.component_ratio.stderr_},
                        {"largest_tail_emp", cell.largest_emp.value, cell.largest_emp.stderr_},
                        {"largest_tail_formula", cell.largest_formula, std::nullopt},
                        {"largest_tail_ratio", cell.largest_ratio.value,
                         cell.largest_ratio.stderr_},
                    };
                    for (const auto& item : items) {
                        auto row = base_row(ctx, item.name);
                        row.n = entry.n;
                        row.lambda = lambda;
                        row.A = cell.A;
                        row.estimate = item.value;
                        row.stderr_ = item.se;
                        row.replicas = entry.replicas;
                        table.rows.push_back(row);
                    }
                }
            }
        } else if (active == noise) {
            const auto n = static_cast<dyner::Vertex>(n_values.front());
            if (eps_values.empty()) {
                const double nd = static_cast<double>(n);
                eps_values = {0.0,
                              std::pow(nd, -2.0 / 3.0),
                              std::pow(nd, -1.0 / 3.0),
                              std::pow(nd, -1.0 / 4.0),
                              std::pow(nd, -1.0 / 8.0),
                              0.5,
                              1.0};
            }
            dyner::experiments::NoisePlan plan;
            plan.n = n;
            plan.a = a_param;
            plan.eps_values = eps_values;
            plan.replicas = reps;
            plan.master_seed = ctx.master_seed;
            plan.workers = workers;
            ctx.parameters = {{"n", n},
                              {"a", a_param},
                              {"eps", eps_values},
                              {"reps", reps}};
            const auto result = dyner::experiments::run_noise_sensitivity(plan);
            for (const auto& cell : result.cells) {
                for (const auto& [name, est] :
                     {std::pair{"cov_F", cell.cov_f}, std::pair{"cov_G", cell.cov_g}}) {
                    auto row = base_row(ctx, name);
                    row.n = n;
                    row.a = a_param;
                    row.eps = cell.eps;
                    row.estimate = est.value;
                    row.stderr_ = est.stderr_;
                    row.replicas = reps;
                    table.rows.push_back(row);
                }
                auto row = base_row(ctx, "mean_F");
                row.n = n;
                row.a = a_param;
                row.eps = cell.eps;
                row.estimate = cell.mean_f;
                row.replicas = reps;
                table.rows.push_back(row);
            }
        } else if (active == second) {
            const auto n = static_cast<dyner::Vertex>(n_values.front());
            const double beta = betas.empty() ? 0.5 : betas.front();
            dyner::experiments::SecondMomentPlan plan;
            plan.n = n;
            plan.beta = beta;
            plan.replicas = reps;
            plan.master_seed = ctx.master_seed;
            plan.workers = workers;
            ctx.parameters = {{"n", n}, {"beta", beta}, {"reps", reps}};
            const auto result = dyner::experiments::run_second_moment(plan);
            struct Item {
                const char* name;
                double value;
                std::optional<double> se;
            };
            const Item items[] = {
                {"EZ1", result.ez1.value, result.ez1.stderr_},
                {"EZ1_sq", result.ez1_sq.value, result.ez1_sq.stderr_},
                {"EZ1Z2", result.ez1z2.value, result.ez1z2.stderr_},
                {"ratio_eq41", result.ratio_eq41, std::nullopt},
                {"static_window_prob", result.static_prob.value, result.static_prob.stderr_},
            };
            for (const auto& item : items) {
                auto row = base_row(ctx, item.name);
                row.n = n;
                row.beta = beta;
                row.estimate = item.value;
                row.stderr_ = item.se;
                row.replicas = reps;
                table.rows.push_back(row);
            }
        } else if (active == unionb) {
            const auto n = static_cast<dyner::Vertex>(n_values.front());
            const double beta = betas.empty() ? 1.0 : betas.front();
            dyner::experiments::UnionBoundPlan plan;
            plan.n = n;
            plan.beta = beta;
            plan.replicas = reps;
            plan.master_seed = ctx.master_seed;
            plan.workers = workers;
            ctx.parameters = {{"n", n}, {"beta", beta}, {"reps", reps}};
            const auto result = dyner::experiments::run_union_bound(plan);
            for (std::uint32_t i = 0; i < result.interval_count; ++i) {
                auto row = base_row(ctx, "interval_exceed_freq");
                row.n = n;
                row.beta = beta;
                row.interval = i;
                row.estimate = result.interval_frequency[i].value;
                row.stderr_ = result.interval_frequency[i].stderr_;
                row.replicas = reps;
                table.rows.push_back(row);
            }
            auto any = base_row(ctx, "any_exceed_freq");
            any.n = n;
            any.beta = beta;
            any.estimate = result.any_exceed.value;
            any.stderr_ = result.any_exceed.stderr_;
            any.replicas = reps;
            table.rows.push_back(any);
            auto mean = base_row(ctx, "mean_exceed_count");
            mean.n = n;
            mean.beta = beta;
            mean.estimate = result.mean_exceed_count;
            mean.replicas = reps;
            table.rows.push_back(mean);
        } else if (active == reveal) {
            dyner::experiments::RevealPlan plan;
            for (auto n : n_values) plan.n_values.push_back(static_cast<dyner::Vertex>(n));
            plan.a = a_param;
            plan.replicas = reps;
            plan.master_seed = ctx.master_seed;
            plan.workers = workers;
            ctx.parameters = {{"n", n_values}, {"a", a_param}, {"reps", reps}};
            const auto result = dyner::experiments::run_reveal_experiment(plan);
            for (const auto& entry : result.entries) {
                struct Item {
                    const char* name;
                    double value;
                    std::optional<double> se;
                };
                const Item items[] = {
                    {"off_hub_reveal_freq", entry.off_hub_frequency.value,
                     entry.off_hub_frequency.stderr_},
                    {"off_hub_reveal_times_n23", entry.scaled_off_hub, std::nullopt},
                    {"hub_reveal_freq", entry.hub_frequency, std::nullopt},
                    {"decision_freq", entry.decision_frequency.value,
                     entry.decision_frequency.stderr_},
                };
                for (const auto& item : items) {
                    auto row = base_row(ctx, item.name);
                    row.n = entry.n;
                    row.a = a_param;
                    row.estimate = item.value;
                    row.stderr_ = item.se;
                    row.replicas = entry.replicas;
                    table.rows.push_back(row);
                }
            }
        } else if (active == spectral) {
            if (!(spectral_p > 0.0 && spectral_p < 1.0))
                throw std::invalid_argument("spectral-check: p must lie strictly inside (0,1)");
            if (reps == 1000) reps = 100;  // identity battery default
            ctx.parameters = {{"m", spectral_m}, {"p", spectral_p}, {"reps", reps}};
            const auto suite = dyner::spectral::run_spectral_suite(
                static_cast<std::uint32_t>(spectral_m), spectral_p,
                static_cast<std::uint32_t>(reps), ctx.master_seed);
            for (const auto& check : suite.checks) {
                auto row = base_row(ctx, check.name);
                row.m = static_cast<std::uint32_t>(spectral_m);
                row.p = spectral_p;
                row.estimate = check.max_abs_diff;
                row.replicas = reps;
                table.rows.push_back(row);
                std::cout << (check.pass ? "PASS " : "FAIL ") << check.name
                          << " max|diff| = " << dyner::format_double(check.max_abs_diff) << '\n';
            }
            const int rc = write_outputs(ctx, table);
            if (rc != 0) return rc;
            if (!suite.all_pass()) {
                std::cerr << "dyner: spectral-check found identity violations\n";
                return kExitCheckFailed;
            }
            return 0;
        }

        const int rc = write_outputs(ctx, table);
        if (rc != 0) return rc;
        std::cout << ctx.command << ": " << table.rows.size() << " rows -> " << ctx.out_path
                  << '\n';
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "dyner: invalid parameter: " << e.what() << '\n';
        return kExitBadParameter;
    } catch (const std::exception& e) {
        std::cerr << "dyner: error: " << e.what() << '\n';
        return 1;
    }
}
