#include "bwk/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace bwk {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double band_target(const BasisCounters& c, double xi_k, double xi_sum) {
    return static_cast<double>(c.selections) * xi_k / xi_sum;
}

// Pull-ratio band for one basis under frozen ratios; returns a message on violation.
std::string check_band(const PseudoBasis& basis, const BasisCounters& c,
                       const std::vector<double>& frozen_xi, int rho) {
    double xi_sum = 0.0;
    for (int k : basis.arms) xi_sum += frozen_xi[k];
    if (xi_sum <= 0.0) return {};
    for (int k : basis.arms) {
        long pulled = 0;
        auto it = c.arm_pulls.find(real_to_extended(k));
        if (it != c.arm_pulls.end()) pulled = it->second;
        const double target = band_target(c, frozen_xi[k], xi_sum);
        if (pulled > target + 1.0 + 1e-9 || pulled < target - rho - 1e-9) {
            return "load-balance band violated on basis " + basis.to_string() + " arm " +
                   std::to_string(k) + ": n^x=" + std::to_string(pulled) +
                   " target=" + fmt17(target) + " rho=" + std::to_string(rho);
        }
    }
    return {};
}

} // namespace

const char* to_string(AssertLevel level) {
    switch (level) {
        case AssertLevel::kOff: return "off";
        case AssertLevel::kInvariants: return "invariants";
        case AssertLevel::kParanoid: return "paranoid";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (policies.empty()) throw ConfigError("config: no policies");
    if (b_grid.empty()) throw ConfigError("config: empty B grid");
    for (std::size_t i = 0; i < b_grid.size(); ++i) {
        if (b_grid[i] <= 0.0) throw ConfigError("config: B grid entries must be positive");
        if (i > 0 && b_grid[i] <= b_grid[i - 1]) {
            throw ConfigError("config: B grid must be strictly increasing");
        }
    }
    if (replications < 1) throw ConfigError("config: replications must be >= 1");
    if (jobs < 1) throw ConfigError("config: jobs must be >= 1");
}

OracleInfo make_oracle_info(const Instance& instance) {
    OracleInfo info;
    GapTable table = analyze(instance.scale > 0.0 ? instance : instance.with_scale(1.0));
    info.xi_star = table.optimal.xi;
    info.rho = table.rho;
    info.true_costs_resource0.reserve(instance.arms.size());
    for (const auto& arm : instance.arms) info.true_costs_resource0.push_back(arm.mean_costs[0]);
    return info;
}

EpisodeResult run_episode(const Instance& instance, const PolicyConfig& config, uint64_t seed,
                          AssertLevel level, bool keep_trace, const OracleInfo* oracle) {
    instance.validate();
    const int K = instance.num_arms();
    const int C = instance.num_resources();
    const bool time = instance.time_is_resource;
    const long horizon = time ? std::lround(instance.budget(C - 1)) : 0;

    PolicyConfig cfg = config;
    OracleInfo local_oracle;
    const bool needs_oracle =
        cfg.kind == PolicyKind::kStaticLp ||
        (cfg.kind == PolicyKind::kUcbSimplex && cfg.init_rule == InitRule::kRhoPullsEach &&
         cfg.rho < 1);
    if (needs_oracle && oracle == nullptr) {
        local_oracle = make_oracle_info(instance);
        oracle = &local_oracle;
    }
    if (cfg.kind == PolicyKind::kUcbSimplex && cfg.init_rule == InitRule::kRhoPullsEach &&
        cfg.rho < 1) {
        cfg.rho = oracle->rho;
    }

    EpisodeResult res;
    res.arm_pulls.assign(K, 0);
    res.consumed.assign(C, 0.0);

    EnvState env(C);
    EstimatorState est(K, C);
    SubstreamRng rng(seed);

    // Non-time instances get a hard round cap so a policy that stops consuming
    // cannot loop forever; a hit cap is a reported anomaly, not an error.
    long cap_rounds;
    if (time) {
        cap_rounds = horizon + 2;
    } else {
        double sum_budget = 0.0;
        for (int i = 0; i < C; ++i) sum_budget += instance.budget(i);
        const double eps_guess = instance.min_positive_mean_cost();
        cap_rounds = static_cast<long>(std::ceil(10.0 * sum_budget / eps_guess)) + 2;
    }
    auto violate = [&](const std::string& msg) {
        res.violations.push_back("t=" + std::to_string(env.round) + ": " + msg);
    };

    try {
        Policy policy(cfg, K, C, instance.budget_ratios, time, horizon);
        if (cfg.kind == PolicyKind::kStaticLp) policy.set_oracle_solution(oracle->xi_star);

        std::function<void(int, const Observation&)> init_sink;
        if (keep_trace) {
            init_sink = [&](int arm, const Observation& obs) {
                TraceStep step;
                step.t = obs.round;
                step.extended_arm = real_to_extended(arm);
                step.payoff_arm = arm;
                step.init = true;
                step.reward = obs.reward;
                step.costs = obs.costs;
                res.trace.push_back(std::move(step));
            };
        }
        // init pulls landing before tau* count toward the payoff
        res.init_rounds = policy.run_init(
            env, instance, est, rng, [&](int arm, const Observation& obs) {
                if (!env.terminated) res.total_payoff += obs.reward;
                if (init_sink) init_sink(arm, obs);
            });

        while (true) {
            if (env.terminated) break;
            if (env.round >= cap_rounds) {
                res.cap_hit = true;
                break;
            }
            const long t = env.round + 1;
            auto [action, snap] = policy.select_action(est, env, t, rng);

            // pacing feasibility is an at-selection-time property: check
            // against the estimates the balancer actually saw
            if (snap.pacing && level != AssertLevel::kOff) {
                const PacingState& p = *snap.pacing;
                for (double v : p.distribution) {
                    if (v < -1e-9) violate("pacing distribution negative: " + fmt17(v));
                }
                for (std::size_t j = 0; j < p.mapped_arms.size(); ++j) {
                    const int ext = p.mapped_arms[j];
                    if (ext == kSkipArm) continue;
                    const double xi = snap.chosen.xi[ext - 1];
                    if (std::abs(p.base_solution[j] - xi) > 1e-9) {
                        violate("pacing p(0) drifts from the LP solution: " +
                                fmt17(p.base_solution[j]) + " vs " + fmt17(xi));
                    }
                }
                for (int i = 0; i < C; ++i) {
                    if (std::find(p.resources.begin(), p.resources.end(), i) != p.resources.end()) {
                        continue;
                    }
                    double used = 0.0;
                    for (std::size_t j = 0; j < p.mapped_arms.size(); ++j) {
                        const int ext = p.mapped_arms[j];
                        const double cij = ext == kSkipArm
                                               ? 0.0
                                               : est.arm(ext - 1).mean_costs[i];
                        used += cij * p.distribution[j];
                    }
                    if (used > instance.budget_ratios[i] + 1e-9) {
                        violate("pacing violates resource " + std::to_string(i) + ": " +
                                fmt17(used) + " > " + fmt17(instance.budget_ratios[i]));
                    }
                }
            }

            Observation obs = action.payoff_arm >= 0
                                  ? step(env, instance, action.payoff_arm, rng)
                                  : step_skip(env, instance);
            if (cfg.kind == PolicyKind::kUcbSimplex) {
                est.record(snap.chosen.basis, action.extended, action.payoff_arm, obs);
            } else {
                est.record_unattributed(action.payoff_arm, obs);
            }
            if (!env.terminated) res.total_payoff += obs.reward;

            if (snap.pacing) {
                res.pacing_rounds += 1;
                res.max_delta_star = std::max(res.max_delta_star, snap.pacing->delta_star);
            }
            if (cfg.balancer == Balancer::kAlg3 && oracle != nullptr &&
                snap.mapped_pair[0] >= 0) {
                auto true_cost = [&](int ext) {
                    if (ext == kSkipArm) return 0.0;
                    if (ext <= K) return oracle->true_costs_resource0[ext - 1];
                    return 1.0;
                };
                const int a = snap.mapped_pair[0];
                const int b = snap.mapped_pair[1];
                const double ca = true_cost(a), cb = true_cost(b);
                const int true_hi = (cb > ca || (cb == ca && b < a)) ? b : a;
                if (true_hi != a) {
                    res.swaps += 1;
                    est.basis_mutable(snap.chosen.basis).swaps += 1;
                }
            }

            if (level != AssertLevel::kOff && cfg.kind == PolicyKind::kUcbSimplex) {
                if (est.rounds_recorded() != env.round) {
                    violate("recorded rounds diverge from environment rounds");
                }
                long selected = 0;
                for (const auto& [b, c] : est.bases()) selected += c.selections;
                if (selected + est.init_pulls() != est.rounds_recorded()) {
                    violate("selection counters + init pulls != rounds");
                }
                if (cfg.balancer == Balancer::kAlg2) {
                    const auto& frozen = policy.frozen_ratios();
                    if (level == AssertLevel::kParanoid) {
                        for (const auto& [b, c] : est.bases()) {
                            auto it = frozen.find(b);
                            if (it == frozen.end()) continue;
                            std::string msg = check_band(b, c, it->second, cfg.rho);
                            if (!msg.empty()) violate(msg);
                        }
                    } else {
                        auto it = frozen.find(snap.chosen.basis);
                        if (it != frozen.end()) {
                            const BasisCounters* c = est.basis(snap.chosen.basis);
                            std::string msg = check_band(snap.chosen.basis, *c, it->second, cfg.rho);
                            if (!msg.empty()) violate(msg);
                        }
                    }
                }
            }

            if (keep_trace) {
                TraceStep stepRec;
                stepRec.t = obs.round;
                stepRec.extended_arm = action.extended;
                stepRec.payoff_arm = action.payoff_arm;
                stepRec.init = false;
                if (cfg.kind == PolicyKind::kUcbSimplex) {
                    stepRec.has_basis = true;
                    stepRec.basis = snap.chosen.basis;
                }
                stepRec.reward = obs.reward;
                stepRec.costs = obs.costs;
                res.trace.push_back(std::move(stepRec));
            }
        }
    } catch (const std::exception& e) {
        res.failed = true;
        res.error = e.what();
    }

    res.rounds = env.round;
    res.tau_star = env.terminated ? env.stop_time : env.round + 1;
    res.consumed = env.consumed;
    for (int k = 0; k < K; ++k) res.arm_pulls[k] = est.arm(k).pulls;
    res.basis_counters = est.bases();
    return res;
}

std::string format_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "policy_id,B,reps,mean_payoff,payoff_ci,regret_ub,regret_ci,mean_tau,tau_bound,"
          "ln_ratio,sqrt_ratio\n";
    for (const SweepRow& row : rows) {
        const RegretEstimate& e = row.estimate;
        const double nanv = std::nan("");
        os << row.policy_id << ',' << fmt17(row.b) << ',' << row.reps << ','
           << fmt17(e.mean_realized_payoff) << ',' << fmt17(e.ci_halfwidth) << ','
           << fmt17(e.pseudo_regret_ub) << ',' << fmt17(e.ci_halfwidth) << ','
           << fmt17(e.mean_tau) << ',' << fmt17(e.tau_bound_defined ? e.tau_bound : nanv) << ','
           << fmt17(e.pseudo_regret_ub / std::log(row.b)) << ','
           << fmt17(e.pseudo_regret_ub / std::sqrt(row.b)) << '\n';
    }
    return os.str();
}

SweepResult run_sweep(const ExperimentConfig& config) {
    config.validate();
    Instance proto = config.instance.with_scale(config.b_grid.front());
    proto.validate();
    const OracleInfo oracle = make_oracle_info(proto);

    const std::size_t n_policies = config.policies.size();
    const std::size_t n_grid = config.b_grid.size();
    const std::size_t n_reps = static_cast<std::size_t>(config.replications);
    const std::size_t total = n_policies * n_grid * n_reps;
    const bool keep_trace = !config.trace_jsonl.empty();

    SweepResult result;
    result.episodes.resize(total);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            const std::size_t p = i / (n_grid * n_reps);
            const std::size_t bi = (i / n_reps) % n_grid;
            const std::size_t rep = i % n_reps;
            const uint64_t seed = derive_seed(config.master_seed, p, bi, rep);
            try {
                const Instance inst = config.instance.with_scale(config.b_grid[bi]);
                result.episodes[i] = run_episode(inst, config.policies[p], seed,
                                                 config.assert_level, keep_trace, &oracle);
            } catch (const std::exception& e) {
                result.episodes[i].failed = true;
                result.episodes[i].error = e.what();
            }
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t jobs = std::min<std::size_t>(std::min<std::size_t>(config.jobs, hw), total);
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (std::size_t p = 0; p < n_policies; ++p) {
        for (std::size_t bi = 0; bi < n_grid; ++bi) {
            SweepRow row;
            row.policy_id = config.policies[p].id;
            row.b = config.b_grid[bi];
            const Instance inst = config.instance.with_scale(row.b);

            std::vector<EpisodeStats> stats;
            for (std::size_t rep = 0; rep < n_reps; ++rep) {
                const EpisodeResult& ep = result.episodes[(p * n_grid + bi) * n_reps + rep];
                if (ep.failed) {
                    row.failures += 1;
                    continue;
                }
                if (ep.cap_hit) row.cap_hits += 1;
                row.violations += static_cast<long>(ep.violations.size());
                stats.push_back(ep.stats());
            }
            row.reps = static_cast<long>(stats.size());
            if (stats.size() >= 2) {
                row.estimate = regret_report(stats, inst);
            } else if (stats.size() == 1) {
                // single replication: point estimate with undefined CI, flagged as nan
                row.estimate.lp_payoff_bound = payoff_bound(inst);
                row.estimate.mean_realized_payoff = stats[0].total_payoff;
                row.estimate.pseudo_regret_ub =
                    row.estimate.lp_payoff_bound - stats[0].total_payoff;
                row.estimate.mean_tau = stats[0].tau_star;
                row.estimate.ci_halfwidth = std::nan("");
                row.estimate.tau_ci_halfwidth = std::nan("");
                row.estimate.episodes = 1;
            }
            result.rows.push_back(std::move(row));
        }
        if (n_grid >= 3) {
            std::vector<std::pair<double, double>> curve;
            for (std::size_t bi = 0; bi < n_grid; ++bi) {
                const SweepRow& row = result.rows[p * n_grid + bi];
                curve.emplace_back(row.b, row.estimate.pseudo_regret_ub);
            }
            result.growth.push_back({config.policies[p].id, growth_diagnostics(curve)});
        }
    }

    result.csv = format_csv(result.rows);
    if (!config.output_csv.empty()) {
        std::ofstream out(config.output_csv, std::ios::binary);
        if (!out) throw ConfigError("cannot write output csv: " + config.output_csv);
        out << result.csv;
    }
    if (keep_trace) {
        std::ofstream out(config.trace_jsonl, std::ios::binary);
        if (!out) throw ConfigError("cannot write trace file: " + config.trace_jsonl);
        out << format_trace_jsonl(config, result);
    }
    return result;
}

std::string format_trace_jsonl(const ExperimentConfig& config, const SweepResult& result) {
    const std::size_t n_grid = config.b_grid.size();
    const std::size_t n_reps = static_cast<std::size_t>(config.replications);
    std::ostringstream os;
    for (std::size_t i = 0; i < result.episodes.size(); ++i) {
        const std::size_t p = i / (n_grid * n_reps);
        const std::size_t bi = (i / n_reps) % n_grid;
        const std::size_t rep = i % n_reps;
        json line;
        line["policy"] = config.policies[p].id;
        line["b"] = config.b_grid[bi];
        line["replication"] = rep;
        line["seed"] = derive_seed(config.master_seed, p, bi, rep);
        json steps = json::array();
        for (const TraceStep& st : result.episodes[i].trace) {
            json s;
            s["t"] = st.t;
            s["arm"] = st.extended_arm;
            s["payoff_arm"] = st.payoff_arm;
            s["init"] = st.init;
            s["reward"] = st.reward;
            s["costs"] = st.costs;
            if (st.has_basis) {
                s["basis_arms"] = st.basis.arms;
                s["basis_resources"] = st.basis.resources;
            }
            steps.push_back(std::move(s));
        }
        line["steps"] = std::move(steps);
        os << line.dump() << '\n';
    }
    return os.str();
}

namespace {

CaseTag parse_case(const std::string& s) {
    if (s == "case1") return CaseTag::kCase1;
    if (s == "case2") return CaseTag::kCase2;
    if (s == "case3") return CaseTag::kCase3;
    if (s == "case4") return CaseTag::kCase4;
    throw ConfigError("unknown case tag: " + s);
}

ArmKind parse_arm_kind(const std::string& s) {
    if (s == "bernoulli-joint") return ArmKind::kBernoulliJoint;
    if (s == "deterministic-cost") return ArmKind::kDeterministicCost;
    if (s == "pricing") return ArmKind::kPricing;
    if (s == "auction") return ArmKind::kAuction;
    if (s == "procurement") return ArmKind::kProcurement;
    if (s == "tabular") return ArmKind::kTabular;
    throw ConfigError("unknown arm kind: " + s);
}

InitRule parse_init_rule(const std::string& s) {
    if (s == "until-nonzero-cost") return InitRule::kUntilNonzeroCost;
    if (s == "rho-pulls-each") return InitRule::kRhoPullsEach;
    if (s == "one-pull-each") return InitRule::kOnePullEach;
    if (s == "c_init-log-pulls-each") return InitRule::kLogCountPullsEach;
    throw ConfigError("unknown init rule: " + s);
}

Balancer parse_balancer(const std::string& s) {
    if (s == "none") return Balancer::kNone;
    if (s == "alg2") return Balancer::kAlg2;
    if (s == "alg3") return Balancer::kAlg3;
    if (s == "alg4") return Balancer::kAlg4;
    if (s == "alg5-alt") return Balancer::kAlg5Alt;
    if (s == "alg6-alt") return Balancer::kAlg6Alt;
    throw ConfigError("unknown balancer: " + s);
}

PolicyKind parse_policy_kind(const std::string& s) {
    if (s == "ucb-simplex") return PolicyKind::kUcbSimplex;
    if (s == "ucb1") return PolicyKind::kUcb1;
    if (s == "static-lp") return PolicyKind::kStaticLp;
    if (s == "adaptive-lp") return PolicyKind::kAdaptiveLp;
    throw ConfigError("unknown policy kind: " + s);
}

LatentDist parse_latent(const json& j) {
    LatentDist d;
    const std::string kind = j.value("kind", "uniform");
    if (kind == "uniform") {
        d.kind = LatentDist::Kind::kUniform;
        d.lo = j.value("lo", 0.0);
        d.hi = j.value("hi", 1.0);
    } else if (kind == "discrete") {
        d.kind = LatentDist::Kind::kDiscrete;
        d.discrete.values = j.at("values").get<std::vector<double>>();
        d.discrete.probs = j.at("probs").get<std::vector<double>>();
    } else {
        throw ConfigError("unknown latent distribution kind: " + kind);
    }
    return d;
}

Instance parse_instance(const json& j) {
    const std::string scenario = j.value("scenario", "tabular");
    if (scenario == "tabular") {
        const auto rewards = j.at("mean_rewards").get<std::vector<double>>();
        const auto cost_rows = j.at("mean_costs").get<std::vector<std::vector<double>>>();
        const auto ratios = j.at("budget_ratios").get<std::vector<double>>();
        Mat costs(cost_rows.size(), rewards.size());
        for (std::size_t i = 0; i < cost_rows.size(); ++i) {
            if (cost_rows[i].size() != rewards.size()) {
                throw ConfigError("mean_costs rows must have one entry per arm");
            }
            for (std::size_t k = 0; k < rewards.size(); ++k) costs(i, k) = cost_rows[i][k];
        }
        return make_tabular_instance(rewards, costs, ratios, j.value("time_is_resource", false),
                                     parse_case(j.at("case").get<std::string>()),
                                     parse_arm_kind(j.value("kind", "tabular")));
    }

    ScenarioSpec spec;
    if (j.contains("budget_ratios")) {
        spec.budget_ratios = j.at("budget_ratios").get<std::vector<double>>();
    }
    if (j.contains("prices")) spec.prices = j.at("prices").get<std::vector<double>>();
    if (j.contains("valuation")) spec.valuation = parse_latent(j.at("valuation"));
    spec.reserve = j.value("reserve", 0.0);
    spec.include_time = j.value("include_time", true);
    if (j.contains("click_rates")) spec.click_rates = j.at("click_rates").get<std::vector<double>>();
    if (j.contains("cpc")) spec.cpc = j.at("cpc").get<std::vector<double>>();
    if (j.contains("energy_costs")) {
        spec.energy_costs = j.at("energy_costs").get<std::vector<double>>();
    }
    if (j.contains("info_rates")) spec.info_rates = j.at("info_rates").get<std::vector<double>>();
    if (j.contains("shelf")) {
        const json& shelf = j.at("shelf");
        spec.shelf_scale = shelf.value("scale", 1.0);
        for (const json& arm : shelf.at("arms")) {
            std::vector<ShelfProduct> products;
            for (const json& prod : arm) {
                ShelfProduct sp;
                sp.price = prod.at("price").get<double>();
                sp.units = prod.at("units").get<int>();
                sp.max_demand = prod.value("max_demand", 1);
                sp.sale_prob = prod.at("sale_prob").get<double>();
                products.push_back(sp);
            }
            spec.shelf_arms.push_back(std::move(products));
        }
    }
    return make_scenario(scenario, spec);
}

PolicyConfig parse_policy(const json& j, const Instance& instance, std::size_t index) {
    const std::string kind_str = j.value("kind", "ucb-simplex");
    const PolicyKind kind = parse_policy_kind(kind_str);
    const CaseTag tag =
        j.contains("case") ? parse_case(j.at("case").get<std::string>()) : instance.case_tag;
    const double kappa = j.value("kappa", 0.0);
    const double epsilon_known = j.value("epsilon_known", 0.0);

    PolicyConfig cfg;
    if (kind == PolicyKind::kUcbSimplex) {
        cfg = default_policy(tag, instance.num_resources(), kappa, epsilon_known);
    } else {
        cfg.kind = kind;
        cfg.case_tag = tag;
        cfg.kappa = kappa;
        cfg.epsilon_known = epsilon_known;
        cfg.init_rule = InitRule::kOnePullEach;
        cfg.id = kind_str;
    }
    cfg.id = j.value("id", cfg.id + "-" + std::to_string(index));
    if (j.contains("lambda")) cfg.lambda = j.at("lambda").get<double>();
    if (j.contains("eta")) cfg.eta = j.at("eta").get<std::vector<double>>();
    if (j.contains("init_rule")) cfg.init_rule = parse_init_rule(j.at("init_rule").get<std::string>());
    if (j.contains("balancer")) cfg.balancer = parse_balancer(j.at("balancer").get<std::string>());
    cfg.skip_rounds_allowed = j.value("skip_rounds_allowed", cfg.skip_rounds_allowed);
    cfg.c_init = j.value("c_init", cfg.c_init);
    cfg.delta_max = j.value("delta_max", cfg.delta_max);
    cfg.gamma = j.value("gamma", cfg.gamma);
    cfg.rho = j.value("rho", cfg.rho);
    cfg.init_cap_per_arm = j.value("init_cap_per_arm", cfg.init_cap_per_arm);
    if (j.value("tie_break", "canonical") != std::string("canonical")) {
        throw ConfigError("tie_break: only \"canonical\" is supported");
    }
    return cfg;
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    try {
        const json j = json::parse(json_text);
        if (!j.contains("spec_version") || j.at("spec_version").get<int>() != 1) {
            throw ConfigError("config: spec_version must be 1");
        }
        ExperimentConfig cfg;
        cfg.instance = parse_instance(j.at("instance"));
        for (std::size_t i = 0; i < j.at("policies").size(); ++i) {
            cfg.policies.push_back(parse_policy(j.at("policies")[i], cfg.instance, i));
        }
        if (j.contains("grid")) {
            cfg.b_grid = j.at("grid").at("B").get<std::vector<double>>();
        } else {
            cfg.b_grid = j.at("b_grid").get<std::vector<double>>();
        }
        cfg.replications = j.value("replications", 1);
        cfg.master_seed = j.value("seed", 1ULL);
        const std::string level = j.value("assertions", "invariants");
        if (level == "off") cfg.assert_level = AssertLevel::kOff;
        else if (level == "invariants") cfg.assert_level = AssertLevel::kInvariants;
        else if (level == "paranoid") cfg.assert_level = AssertLevel::kParanoid;
        else throw ConfigError("unknown assertion level: " + level);
        cfg.output_csv = j.value("output_csv", "");
        cfg.trace_jsonl = j.value("trace_jsonl", "");
        cfg.jobs = j.value("jobs", 1);
        cfg.horizon_cap_factor = j.value("horizon_cap_factor", 10.0);
        cfg.audit_epsilon = j.value("audit_epsilon", 0.0);
        cfg.validate();
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace bwk
