// bwk: command-line front end for the bandits-with-knapsacks simulation suite.
//
// Subcommands:
//   run <config>      run one episode per policy at the first grid point
//   sweep <config>    run the full (policy x B x replication) grid, write CSV
//   analyze <config>  print the gap table and the non-degeneracy audit
//   verify            solver self-checks on random instances
//   scenarios         list built-in environment generators
//
// Exit status: 0 success, 1 usage error, 2 config error, 3 runtime or
// assertion failure.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bwk/harness.hpp"
#include "bwk/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CommonOpts {
    std::string config_path;
    uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 0;
    std::string assert_level;
};

bwk::ExperimentConfig load_with_overrides(const CommonOpts& opts) {
    bwk::ExperimentConfig cfg = bwk::load_config(opts.config_path);
    if (opts.seed_set) cfg.master_seed = opts.seed;
    if (opts.jobs > 0) cfg.jobs = opts.jobs;
    if (!opts.assert_level.empty()) {
        if (opts.assert_level == "off") cfg.assert_level = bwk::AssertLevel::kOff;
        else if (opts.assert_level == "invariants") cfg.assert_level = bwk::AssertLevel::kInvariants;
        else if (opts.assert_level == "paranoid") cfg.assert_level = bwk::AssertLevel::kParanoid;
        else throw bwk::ConfigError("unknown assertion level: " + opts.assert_level);
    }
    return cfg;
}

int cmd_run(const CommonOpts& opts) {
    const bwk::ExperimentConfig cfg = load_with_overrides(opts);
    const double b = cfg.b_grid.front();
    const bwk::Instance inst = cfg.instance.with_scale(b);
    const bwk::OracleInfo oracle = bwk::make_oracle_info(inst);

    bool violations = false;
    for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
        const uint64_t seed = bwk::derive_seed(cfg.master_seed, p, 0, 0);
        const bwk::EpisodeResult ep =
            bwk::run_episode(inst, cfg.policies[p], seed, cfg.assert_level, false, &oracle);
        std::printf("policy %-24s B=%.6g seed=%" PRIu64 "\n", cfg.policies[p].id.c_str(), b, seed);
        if (ep.failed) {
            std::printf("  FAILED: %s\n", ep.error.c_str());
            violations = true;
            continue;
        }
        std::printf("  tau*=%ld payoff=%.6f rounds=%ld init=%ld%s\n", ep.tau_star,
                    ep.total_payoff, ep.rounds, ep.init_rounds,
                    ep.cap_hit ? " [round cap hit]" : "");
        std::printf("  consumed:");
        for (double c : ep.consumed) std::printf(" %.4f", c);
        std::printf("  budgets:");
        for (int i = 0; i < inst.num_resources(); ++i) std::printf(" %.4f", inst.budget(i));
        std::printf("\n");
        std::vector<std::pair<bwk::PseudoBasis, bwk::BasisCounters>> tracked(
            ep.basis_counters.begin(), ep.basis_counters.end());
        std::sort(tracked.begin(), tracked.end(), [](const auto& a, const auto& b) {
            if (a.second.selections != b.second.selections) {
                return a.second.selections > b.second.selections;
            }
            return a.first.to_string() < b.first.to_string();
        });
        for (std::size_t i = 0; i < tracked.size() && i < 5; ++i) {
            std::printf("  basis %-14s selected %ld times\n",
                        tracked[i].first.to_string().c_str(), tracked[i].second.selections);
        }
        if (!ep.violations.empty()) {
            violations = true;
            std::printf("  %zu invariant violations, first: %s\n", ep.violations.size(),
                        ep.violations.front().c_str());
        }
    }
    return violations ? kExitRuntime : kExitOk;
}

int cmd_sweep(const CommonOpts& opts) {
    const bwk::ExperimentConfig cfg = load_with_overrides(opts);
    const bwk::SweepResult result = bwk::run_sweep(cfg);
    std::fputs(result.csv.c_str(), stdout);
    long violations = 0, failures = 0;
    for (const auto& row : result.rows) {
        violations += row.violations;
        failures += row.failures;
    }
    for (const auto& growth : result.growth) {
        std::printf("# growth %s: log-fit slope=%.4g rms=%.4g | sqrt-fit slope=%.4g rms=%.4g%s\n",
                    growth.policy_id.c_str(), growth.diagnostics.log_slope,
                    growth.diagnostics.log_rms_residual, growth.diagnostics.sqrt_slope,
                    growth.diagnostics.sqrt_rms_residual,
                    growth.diagnostics.degenerate ? " [degenerate]" : "");
    }
    if (!cfg.output_csv.empty()) std::printf("# csv written to %s\n", cfg.output_csv.c_str());
    if (failures > 0) std::printf("# %ld failed episodes\n", failures);
    if (violations > 0) std::printf("# %ld invariant violations\n", violations);
    return (violations > 0 || failures > 0) ? kExitRuntime : kExitOk;
}

int cmd_analyze(const CommonOpts& opts) {
    const bwk::ExperimentConfig cfg = load_with_overrides(opts);
    const bwk::Instance inst = cfg.instance.with_scale(cfg.b_grid.front());
    const bwk::GapTable table = bwk::analyze(inst, cfg.audit_epsilon);

    std::printf("arms=%d resources=%d case=%s time_is_resource=%d\n", inst.num_arms(),
                inst.num_resources(), bwk::to_string(inst.case_tag), inst.time_is_resource ? 1 : 0);
    std::printf("optimal basis %s  obj*=%.10g\n", table.optimal.basis.to_string().c_str(),
                table.optimal.objective);
    std::printf("xi*:");
    for (double x : table.optimal.xi) std::printf(" %.10g", x);
    std::printf("\n");
    std::printf("payoff bound at B=%.6g: %.10g\n", inst.scale, bwk::payoff_bound(inst));
    std::printf("rho (cost matrix rank) = %d, delta_min = %.10g\n", table.rho, table.delta_min);
    std::printf("%-18s %-12s %s\n", "feasible basis", "objective", "gap");
    for (std::size_t i = 0; i < table.feasible.size(); ++i) {
        std::printf("%-18s %-12.8g %.8g\n", table.feasible[i].basis.to_string().c_str(),
                    table.feasible[i].objective, table.gaps[i].second);
    }
    std::printf("non-degeneracy audit at epsilon=%.4g: %s\n", cfg.audit_epsilon,
                table.audit.pass ? "pass" : "FAIL");
    for (const auto& rec : table.audit.records) {
        if (!rec.pass) {
            std::printf("  basis %s fails: %s (margin %.4g)\n", rec.basis.to_string().c_str(),
                        rec.detail.c_str(), rec.margin);
        }
    }
    return kExitOk;
}

// Random-instance self-checks: enumeration-oracle equivalence of the LP layer,
// strong duality, and the adjugate identity.
int cmd_verify(uint64_t seed, int instances) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> arm_count(1, 6);
    std::uniform_int_distribution<int> res_count(1, 3);

    int failures = 0;
    for (int trial = 0; trial < instances; ++trial) {
        const int K = arm_count(gen);
        const int C = res_count(gen);
        bwk::LpProblem lp;
        lp.objective.resize(K);
        lp.costs = bwk::Mat(C, K);
        lp.rhs.resize(C);
        for (int k = 0; k < K; ++k) lp.objective[k] = unit(gen);
        bool ok_instance = false;
        for (int i = 0; i < C; ++i) lp.rhs[i] = 0.2 + 0.8 * unit(gen);
        for (int k = 0; k < K; ++k) {
            double col_max = 0.0;
            for (int i = 0; i < C; ++i) {
                lp.costs(i, k) = unit(gen);
                col_max = std::max(col_max, lp.costs(i, k));
            }
            if (col_max == 0.0) lp.costs(0, k) = 0.5;
        }
        ok_instance = true;
        if (!ok_instance) continue;

        const auto solved = bwk::optimal_basis(lp);
        // independent exhaustive check: every square subsystem via Cramer
        double brute = 0.0;
        const auto bases = bwk::enumerate_pseudo_bases(K, C);
        for (const auto& basis : bases) {
            const bwk::BasicSolution sol = bwk::solve_basic(lp, basis);
            if (sol.is_feasible) brute = std::max(brute, sol.objective);
        }
        if (std::abs(brute - solved.best.objective) > 1e-9) {
            std::printf("FAIL trial %d: enumeration mismatch %.12g vs %.12g\n", trial, brute,
                        solved.best.objective);
            ++failures;
        }
        const bwk::DualSolution dual = bwk::solve_dual(lp);
        if (std::abs(dual.value - solved.best.objective) > 1e-9) {
            std::printf("FAIL trial %d: duality gap %.3g\n", trial,
                        dual.value - solved.best.objective);
            ++failures;
        }

        const int d = 1 + static_cast<int>(unit(gen) * 4.0);
        bwk::Mat a(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) a(i, j) = 2.0 * unit(gen) - 1.0;
        }
        const auto [det, adj] = bwk::det_and_adjugate(a);
        double norm = 1.0;
        for (int i = 0; i < d; ++i) {
            double row = 0.0;
            for (int j = 0; j < d; ++j) row += std::abs(a(i, j));
            norm = std::max(norm, row);
        }
        double worst = 0.0;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                double s = 0.0;
                for (int l = 0; l < d; ++l) s += a(i, l) * adj(l, j);
                worst = std::max(worst, std::abs(s - (i == j ? det : 0.0)));
            }
        }
        if (worst > 1e-9 * std::max(1.0, std::pow(norm, d))) {
            std::printf("FAIL trial %d: adjugate identity residual %.3g\n", trial, worst);
            ++failures;
        }
    }
    std::printf("verify: %d instances, %d failures\n", instances, failures);
    return failures == 0 ? kExitOk : kExitRuntime;
}

int cmd_scenarios() {
    std::printf("built-in scenarios:\n");
    std::printf("  pricing      prices in (0,1], shared valuation draw; C=2 (inventory, time)\n");
    std::printf("  auction      bid grid, competing bid on [reserve,1]; C=1 or 2 (include_time)\n");
    std::printf("  procurement  offer grid, shared seller-value draw; C=2 (money, time)\n");
    std::printf("  ad-alloc     per-advertiser budgets, click events; C=K+1\n");
    std::printf("  sensors      deterministic per-sensor energy, Bernoulli rewards; C=K+1\n");
    std::printf("  shelf        deterministic unit clocks, scaled product revenue; C=M+1\n");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bandits-with-knapsacks simulation and solver suite"};
    app.require_subcommand(1);

    CommonOpts opts;
    uint64_t verify_seed = 20240811;
    int verify_instances = 200;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config) sub->add_option("config", opts.config_path, "config file")->required();
        sub->add_option("--seed", opts.seed, "override the config master seed")
            ->each([&](const std::string&) { opts.seed_set = true; });
        sub->add_option("--jobs", opts.jobs, "cap concurrent sweep cells");
        sub->add_option("--assert", opts.assert_level, "off|invariants|paranoid");
    };

    CLI::App* run = app.add_subcommand("run", "run one episode per policy");
    add_common(run, true);
    CLI::App* sweep = app.add_subcommand("sweep", "run the full experiment grid");
    add_common(sweep, true);
    CLI::App* analyze = app.add_subcommand("analyze", "gap table and non-degeneracy audit");
    add_common(analyze, true);
    CLI::App* verify = app.add_subcommand("verify", "solver self-checks");
    verify->add_option("--seed", verify_seed, "self-check seed");
    verify->add_option("--instances", verify_instances, "number of random instances");
    app.add_subcommand("scenarios", "list built-in scenario generators");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand("run")) return cmd_run(opts);
        if (app.got_subcommand("sweep")) return cmd_sweep(opts);
        if (app.got_subcommand("analyze")) return cmd_analyze(opts);
        if (app.got_subcommand("verify")) return cmd_verify(verify_seed, verify_instances);
        if (app.got_subcommand("scenarios")) return cmd_scenarios();
    } catch (const bwk::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return kExitUsage;
}
