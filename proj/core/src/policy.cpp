#include "bwk/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bwk {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

int extended_to_payoff(int extended, int num_arms) {
    if (extended == kSkipArm) return -1;
    if (extended <= num_arms) return extended - 1;
    return extended - num_arms - 1;
}

Action make_action(int extended, int num_arms) {
    Action a;
    a.extended = extended;
    a.payoff_arm = extended_to_payoff(extended, num_arms);
    return a;
}

} // namespace

const char* to_string(PolicyKind k) {
    switch (k) {
        case PolicyKind::kUcbSimplex: return "ucb-simplex";
        case PolicyKind::kUcb1: return "ucb1";
        case PolicyKind::kStaticLp: return "static-lp";
        case PolicyKind::kAdaptiveLp: return "adaptive-lp";
    }
    return "?";
}

const char* to_string(InitRule r) {
    switch (r) {
        case InitRule::kUntilNonzeroCost: return "until-nonzero-cost";
        case InitRule::kRhoPullsEach: return "rho-pulls-each";
        case InitRule::kOnePullEach: return "one-pull-each";
        case InitRule::kLogCountPullsEach: return "c_init-log-pulls-each";
    }
    return "?";
}

const char* to_string(Balancer b) {
    switch (b) {
        case Balancer::kNone: return "none";
        case Balancer::kAlg2: return "alg2";
        case Balancer::kAlg3: return "alg3";
        case Balancer::kAlg4: return "alg4";
        case Balancer::kAlg5Alt: return "alg5-alt";
        case Balancer::kAlg6Alt: return "alg6-alt";
    }
    return "?";
}

PolicyConfig default_policy(CaseTag tag, int num_resources, double kappa, double epsilon_known) {
    PolicyConfig cfg;
    cfg.kind = PolicyKind::kUcbSimplex;
    cfg.case_tag = tag;
    cfg.kappa = kappa;
    cfg.epsilon_known = epsilon_known;
    switch (tag) {
        case CaseTag::kCase1:
            cfg.lambda = 1.0 + kappa;
            cfg.init_rule = InitRule::kUntilNonzeroCost;
            cfg.balancer = Balancer::kNone;
            cfg.id = "ucb-simplex-case1";
            break;
        case CaseTag::kCase2:
            cfg.lambda = 1.0;
            cfg.init_rule = InitRule::kRhoPullsEach;
            cfg.balancer = Balancer::kAlg2;
            cfg.id = "ucb-simplex-case2";
            break;
        case CaseTag::kCase3:
            cfg.lambda = 1.0 + 2.0 * kappa;
            cfg.eta = {1.0, 0.0};
            cfg.init_rule = InitRule::kOnePullEach;
            cfg.balancer = Balancer::kAlg3;
            cfg.id = "ucb-simplex-case3";
            break;
        case CaseTag::kCase4: {
            const double f = factorial(num_resources + 1);
            if (epsilon_known <= 0.0) {
                throw std::invalid_argument("case-4 defaults need epsilon_known > 0");
            }
            cfg.lambda = 1.0 + 2.0 * f * f / epsilon_known;
            cfg.init_rule = InitRule::kLogCountPullsEach;
            cfg.balancer = Balancer::kAlg4;
            cfg.id = "ucb-simplex-case4";
            break;
        }
    }
    return cfg;
}

int balance_alg2(const PseudoBasis& basis, const BasisCounters* counters,
                 const std::vector<double>& frozen_xi) {
    double sum = 0.0;
    for (int k : basis.arms) sum += frozen_xi[k];
    if (basis.empty() || sum <= 0.0) return -1;
    const long n_x = counters ? counters->selections : 0;
    for (int k : basis.arms) {
        long pulled = 0;
        if (counters) {
            auto it = counters->arm_pulls.find(real_to_extended(k));
            if (it != counters->arm_pulls.end()) pulled = it->second;
        }
        // tolerance absorbs roundoff in n_x * xi/sum at exact-ratio boundaries
        if (static_cast<double>(pulled) <= static_cast<double>(n_x) * frozen_xi[k] / sum + 1e-9) {
            return k;
        }
    }
    return basis.arms.back(); // unreachable: the target ratios sum to n_x
}

int balance_alg3(const std::array<int, 2>& extended_arms,
                 const std::array<double, 2>& deflated_costs, double consumed, long selections,
                 double budget_ratio, bool skip_rounds_allowed, std::array<int, 2>* roles) {
    int hi = 0;
    if (deflated_costs[1] > deflated_costs[0] ||
        (deflated_costs[1] == deflated_costs[0] && extended_arms[1] < extended_arms[0])) {
        hi = 1;
    }
    const int lo = 1 - hi;
    if (roles) *roles = {extended_arms[hi], extended_arms[lo]};
    int chosen = consumed <= static_cast<double>(selections) * budget_ratio ? extended_arms[hi]
                                                                            : extended_arms[lo];
    if (chosen == kSkipArm && !skip_rounds_allowed) {
        chosen = chosen == extended_arms[hi] ? extended_arms[lo] : extended_arms[hi];
    }
    return chosen;
}

PacingState balance_alg4(const std::vector<int>& mapped_extended,
                         const std::vector<int>& mapped_resources, const Mat& est_costs,
                         const std::vector<double>& budget_ratios,
                         const BasisCounters* counters, int time_resource, double delta_max) {
    const std::size_t d = mapped_extended.size();
    if (mapped_resources.size() != d || d == 0) {
        throw std::invalid_argument("balance_alg4: mapped basis must pair arms with resources");
    }
    const int num_arms = static_cast<int>(est_costs.cols());
    const int C = static_cast<int>(est_costs.rows());

    PacingState st;
    st.mapped_arms = mapped_extended;
    st.resources = mapped_resources;
    st.direction.assign(d, 0);

    auto entry = [&](int resource, int extended) {
        if (extended == kSkipArm) return resource == time_resource ? 1.0 : 0.0;
        return est_costs(resource, extended - 1);
    };

    const long n_x = counters ? counters->selections : 0;
    std::vector<double> a(d * d), a2(d * d), p0(d), q(d);
    for (std::size_t r = 0; r < d; ++r) {
        const int res = mapped_resources[r];
        for (std::size_t c = 0; c < d; ++c) {
            a[r * d + c] = entry(res, mapped_extended[c]);
        }
        p0[r] = budget_ratios[res];
        if (res == time_resource) {
            st.direction[r] = 0;
        } else {
            const double b_x = counters ? counters->consumed[res] : 0.0;
            st.direction[r] = b_x >= static_cast<double>(n_x) * budget_ratios[res] ? -1 : 1;
        }
        q[r] = static_cast<double>(st.direction[r]);
    }
    a2 = a;

    auto solve = [&](std::vector<double>& mat, std::vector<double>& rhs) {
        // plain elimination; the caller guarantees invertibility up to noise
        double det = 1.0;
        for (std::size_t col = 0; col < d; ++col) {
            std::size_t piv = col;
            double best = std::abs(mat[col * d + col]);
            for (std::size_t r = col + 1; r < d; ++r) {
                if (std::abs(mat[r * d + col]) > best) {
                    best = std::abs(mat[r * d + col]);
                    piv = r;
                }
            }
            if (best <= kSingularTol) return 0.0;
            if (piv != col) {
                for (std::size_t j = col; j < d; ++j) std::swap(mat[piv * d + j], mat[col * d + j]);
                std::swap(rhs[piv], rhs[col]);
                det = -det;
            }
            const double p = mat[col * d + col];
            det *= p;
            for (std::size_t r = col + 1; r < d; ++r) {
                const double f = mat[r * d + col] / p;
                if (f == 0.0) continue;
                for (std::size_t j = col + 1; j < d; ++j) mat[r * d + j] -= f * mat[col * d + j];
                rhs[r] -= f * rhs[col];
            }
        }
        for (std::size_t r = d; r-- > 0;) {
            double s = rhs[r];
            for (std::size_t j = r + 1; j < d; ++j) s -= mat[r * d + j] * rhs[j];
            rhs[r] = s / mat[r * d + r];
        }
        return det;
    };

    if (solve(a, p0) == 0.0) {
        throw std::runtime_error("balance_alg4: singular pacing matrix (solver inconsistency)");
    }
    solve(a2, q);

    // Largest delta >= 0 keeping p(delta) >= 0 and the non-basis constraints
    // satisfied; each bound is a positive ratio of affine terms.
    double delta = delta_max;
    for (std::size_t j = 0; j < d; ++j) {
        if (q[j] < -1e-12) delta = std::min(delta, p0[j] / (-q[j]));
    }
    for (int i = 0; i < C; ++i) {
        if (std::find(mapped_resources.begin(), mapped_resources.end(), i) !=
            mapped_resources.end()) {
            continue;
        }
        double s0 = 0.0, s1 = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double cij = entry(i, mapped_extended[j]);
            s0 += cij * p0[j];
            s1 += cij * q[j];
        }
        if (s1 > 1e-12) delta = std::min(delta, (budget_ratios[i] - s0) / s1);
    }
    st.delta_star = std::max(0.0, delta);
    st.base_solution = p0;
    st.distribution.resize(d);
    for (std::size_t j = 0; j < d; ++j) st.distribution[j] = p0[j] + st.delta_star * q[j];
    (void)num_arms;
    return st;
}

int sample_pacing_arm(const PacingState& pacing, double u) {
    double total = 0.0;
    for (double p : pacing.distribution) total += std::max(p, 0.0);
    if (total <= 0.0) return kSkipArm;
    double acc = 0.0;
    for (std::size_t j = 0; j < pacing.distribution.size(); ++j) {
        acc += std::max(pacing.distribution[j], 0.0) / total;
        if (u < acc) return pacing.mapped_arms[j];
    }
    return pacing.mapped_arms.back();
}

int balance_alg5(const PseudoBasis& basis, const std::vector<double>& xi,
                 const EstimatorState& est) {
    int best = -1;
    double best_ratio = -1.0;
    for (int k : basis.arms) {
        const long n = est.arm(k).pulls;
        const double ratio = n > 0 ? xi[k] / static_cast<double>(n)
                                   : std::numeric_limits<double>::infinity();
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = k;
        }
    }
    return best;
}

Policy::Policy(PolicyConfig cfg, int num_arms, int num_resources,
               std::vector<double> budget_ratios, bool time_is_resource, long horizon)
    : cfg_(std::move(cfg)),
      num_arms_(num_arms),
      num_resources_(num_resources),
      budget_ratios_(std::move(budget_ratios)),
      time_is_resource_(time_is_resource),
      horizon_(horizon) {
    if (static_cast<int>(cfg_.eta.size()) > num_resources_) {
        throw std::invalid_argument("policy: eta has more entries than resources");
    }
    if (cfg_.balancer == Balancer::kAlg3 && !(num_resources_ == 2 && time_is_resource_)) {
        throw std::invalid_argument("policy: alg3 needs C=2 with time as the second resource");
    }
    if (cfg_.balancer == Balancer::kAlg4 && !time_is_resource_) {
        throw std::invalid_argument("policy: alg4 needs time as a resource");
    }
    if (cfg_.kind == PolicyKind::kAdaptiveLp && !time_is_resource_) {
        throw std::invalid_argument("adaptive-lp needs a time horizon");
    }
    if (cfg_.kind == PolicyKind::kUcbSimplex && cfg_.init_rule == InitRule::kRhoPullsEach &&
        cfg_.rho < 1) {
        throw std::invalid_argument("policy: rho-pulls-each initialization needs rho >= 1");
    }
    if (cfg_.init_rule == InitRule::kLogCountPullsEach && cfg_.c_init <= 0.0 &&
        cfg_.epsilon_known <= 0.0) {
        throw std::invalid_argument("policy: log-count initialization needs c_init or epsilon_known");
    }
    if (!(cfg_.gamma >= 0.0 && cfg_.gamma < 1.0)) {
        throw std::invalid_argument("policy: gamma must lie in [0, 1)");
    }
    if (cfg_.kind == PolicyKind::kUcbSimplex || cfg_.kind == PolicyKind::kAdaptiveLp) {
        bases_ = enumerate_pseudo_bases(num_arms_, num_resources_);
    }
}

long Policy::init_pulls_per_arm_log_rule() const {
    const double c = cfg_.c_init > 0.0 ? cfg_.c_init
                                       : 16.0 / (cfg_.epsilon_known * cfg_.epsilon_known);
    const double t = std::max<double>(static_cast<double>(horizon_), 2.0);
    return std::max<long>(1, static_cast<long>(std::ceil(c * std::log(t))));
}

long Policy::run_init(EnvState& env, const Instance& instance, EstimatorState& est,
                      const SubstreamRng& rng,
                      const std::function<void(int arm, const Observation&)>& on_pull) {
    long rounds = 0;
    auto pull = [&](int arm) {
        Observation obs = step(env, instance, arm, rng);
        est.record_init(arm, obs);
        ++rounds;
        if (on_pull) on_pull(arm, obs);
        return obs;
    };

    if (cfg_.kind == PolicyKind::kStaticLp) return 0;
    if (cfg_.kind == PolicyKind::kUcb1 || cfg_.kind == PolicyKind::kAdaptiveLp) {
        for (int k = 0; k < num_arms_; ++k) pull(k);
        return rounds;
    }

    switch (cfg_.init_rule) {
        case InitRule::kUntilNonzeroCost: {
            for (int k = 0; k < num_arms_; ++k) {
                bool seen = false;
                for (long attempt = 0; attempt < cfg_.init_cap_per_arm; ++attempt) {
                    Observation obs = pull(k);
                    double total = 0.0;
                    for (double c : obs.costs) total += c;
                    if (total > 0.0) {
                        seen = true;
                        break;
                    }
                }
                if (!seen) {
                    throw InitializationError("arm " + std::to_string(k) + " produced no cost in " +
                                              std::to_string(cfg_.init_cap_per_arm) + " pulls");
                }
            }
            break;
        }
        case InitRule::kRhoPullsEach: {
            for (int r = 0; r < cfg_.rho; ++r) {
                for (int k = 0; k < num_arms_; ++k) pull(k);
            }
            break;
        }
        case InitRule::kOnePullEach: {
            for (int k = 0; k < num_arms_; ++k) pull(k);
            break;
        }
        case InitRule::kLogCountPullsEach: {
            const long per_arm = init_pulls_per_arm_log_rule();
            for (long r = 0; r < per_arm; ++r) {
                for (int k = 0; k < num_arms_; ++k) pull(k);
            }
            break;
        }
    }
    return rounds;
}

LpProblem Policy::build_optimistic_lp(const EstimatorState& est, long t) const {
    LpProblem lp;
    lp.objective.resize(num_arms_);
    lp.costs = Mat(num_resources_, num_arms_);
    lp.rhs = budget_ratios_;
    for (int k = 0; k < num_arms_; ++k) {
        const ArmStats& s = est.arm(k);
        const double eps = est.radius(k, t);
        lp.objective[k] = s.mean_reward + cfg_.lambda * eps;
        for (int i = 0; i < num_resources_; ++i) {
            lp.costs(i, k) = s.mean_costs[i] - cfg_.eta_for(i) * eps;
        }
    }
    return lp;
}

BasicSolution Policy::solve_cached(const LpProblem& problem) {
    throw_if_unbounded_column(problem);
    if (!cache_valid_ || cache_costs_ != problem.costs || cache_rhs_ != problem.rhs) {
        cache_.assign(bases_.size(), CachedBasis{});
        std::vector<double> a;
        std::vector<double> x;
        for (std::size_t bi = 0; bi < bases_.size(); ++bi) {
            const PseudoBasis& basis = bases_[bi];
            const std::size_t d = basis.size();
            a.resize(d * d);
            x.resize(d);
            const double det = d == 0 ? 1.0 : solve_basis_system(problem, basis, a.data(), x.data());
            if (std::abs(det) <= kSingularTol) continue;
            if (!basic_point_feasible(problem, basis, x.data())) continue;
            CachedBasis& c = cache_[bi];
            c.usable = true;
            c.det = det;
            c.xi_basis.assign(x.begin(), x.end());
        }
        cache_costs_ = problem.costs;
        cache_rhs_ = problem.rhs;
        cache_valid_ = true;
    }

    std::size_t best_index = 0;
    double best_obj = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t bi = 0; bi < bases_.size(); ++bi) {
        const CachedBasis& c = cache_[bi];
        if (!c.usable) continue;
        double obj = 0.0;
        const PseudoBasis& basis = bases_[bi];
        for (std::size_t j = 0; j < basis.arms.size(); ++j) {
            obj += problem.objective[basis.arms[j]] * c.xi_basis[j];
        }
        if (!found || obj > best_obj) {
            found = true;
            best_obj = obj;
            best_index = bi;
        }
    }
    if (!found) throw UnboundedLpError("no feasible basis found");

    const PseudoBasis& basis = bases_[best_index];
    const CachedBasis& c = cache_[best_index];
    BasicSolution sol;
    sol.basis = basis;
    sol.xi.assign(num_arms_, 0.0);
    for (std::size_t j = 0; j < basis.arms.size(); ++j) sol.xi[basis.arms[j]] = c.xi_basis[j];
    sol.objective = best_obj;
    sol.det_value = c.det;
    sol.is_basis = true;
    sol.is_feasible = true;
    return sol;
}

std::pair<Action, UcbLpSnapshot> Policy::select_action(const EstimatorState& est,
                                                       const EnvState& env, long t,
                                                       const SubstreamRng& rng) {
    switch (cfg_.kind) {
        case PolicyKind::kUcbSimplex: return act_ucb_simplex(est, t, rng);
        case PolicyKind::kUcb1: return {act_ucb1(est, t), UcbLpSnapshot{}};
        case PolicyKind::kStaticLp: return {act_static(t, rng), UcbLpSnapshot{}};
        case PolicyKind::kAdaptiveLp: return act_adaptive(est, env, t, rng);
    }
    throw std::logic_error("unknown policy kind");
}

std::pair<Action, UcbLpSnapshot> Policy::act_ucb_simplex(const EstimatorState& est, long t,
                                                         const SubstreamRng& rng) {
    LpProblem problem = build_optimistic_lp(est, t);
    BasicSolution sol = solve_cached(problem);

    UcbLpSnapshot snap;
    snap.exploit_part = 0.0;
    snap.explore_part = 0.0;
    for (int k : sol.basis.arms) {
        snap.exploit_part += sol.xi[k] * est.arm(k).mean_reward;
        snap.explore_part += cfg_.lambda * sol.xi[k] * est.radius(k, t);
    }
    snap.inflated_rewards = std::move(problem.objective);
    snap.deflated_costs = std::move(problem.costs);
    snap.rhs = std::move(problem.rhs);

    const PseudoBasis& basis = sol.basis;
    const BasisCounters* counters = est.basis(basis);
    Action action = Action::skip();

    switch (cfg_.balancer) {
        case Balancer::kNone: {
            if (basis.size() > 1) {
                throw std::logic_error("multi-arm basis selected without a load balancer");
            }
            action = basis.empty() ? Action::skip() : Action::real(basis.arms[0]);
            break;
        }
        case Balancer::kAlg2: {
            if (basis.empty()) {
                action = Action::skip();
                break;
            }
            auto it = frozen_xi_.try_emplace(basis, sol.xi).first;
            const int arm = balance_alg2(basis, counters, it->second);
            action = arm < 0 ? Action::skip() : Action::real(arm);
            break;
        }
        case Balancer::kAlg3: {
            if (basis.empty()) {
                action = Action::skip();
                break;
            }
            std::array<int, 2> pair{};
            std::array<double, 2> costs{};
            auto deflated = [&](int k) { return est.arm(k).mean_costs[0] - est.radius(k, t); };
            if (basis.size() == 2) {
                pair = {real_to_extended(basis.arms[0]), real_to_extended(basis.arms[1])};
                costs = {deflated(basis.arms[0]), deflated(basis.arms[1])};
            } else if (basis.resources[0] == 0) {
                // single arm binding the stochastic resource: pair with skip
                pair = {real_to_extended(basis.arms[0]), kSkipArm};
                costs = {deflated(basis.arms[0]), 0.0};
            } else {
                // single arm binding time: pair with its unit-cost shadow
                pair = {real_to_extended(basis.arms[0]), shadow_of(basis.arms[0], num_arms_)};
                costs = {deflated(basis.arms[0]), 1.0};
            }
            std::array<int, 2> roles{};
            const double consumed = counters ? counters->consumed[0] : 0.0;
            const long n_x = counters ? counters->selections : 0;
            const int chosen = balance_alg3(pair, costs, consumed, n_x, budget_ratios_[0],
                                            cfg_.skip_rounds_allowed, &roles);
            snap.mapped_pair = roles;
            snap.pair_deflated_costs = roles[0] == pair[0] ? std::array<double, 2>{costs[0], costs[1]}
                                                           : std::array<double, 2>{costs[1], costs[0]};
            action = make_action(chosen, num_arms_);
            break;
        }
        case Balancer::kAlg4: {
            std::vector<int> mapped;
            std::vector<int> res = basis.resources;
            mapped.reserve(basis.size() + 1);
            for (int k : basis.arms) mapped.push_back(real_to_extended(k));
            const int time_res = num_resources_ - 1;
            if (std::find(res.begin(), res.end(), time_res) == res.end()) {
                mapped.push_back(kSkipArm);
                res.push_back(time_res);
            }
            Mat est_costs(num_resources_, num_arms_);
            for (int k = 0; k < num_arms_; ++k) {
                for (int i = 0; i < num_resources_; ++i) est_costs(i, k) = est.arm(k).mean_costs[i];
            }
            PacingState pacing = balance_alg4(mapped, res, est_costs, budget_ratios_, counters,
                                              time_res, cfg_.delta_max);
            const double u = rng.uniform(kDomainPolicy, static_cast<uint64_t>(t), 1, 0);
            const int chosen = sample_pacing_arm(pacing, u);
            snap.pacing = std::move(pacing);
            action = make_action(chosen, num_arms_);
            break;
        }
        case Balancer::kAlg5Alt: {
            if (basis.empty()) {
                action = Action::skip();
                break;
            }
            auto it = frozen_xi_.try_emplace(basis, sol.xi).first;
            action = Action::real(balance_alg5(basis, it->second, est));
            break;
        }
        case Balancer::kAlg6Alt: {
            if (basis.empty()) {
                action = Action::skip();
                break;
            }
            action = Action::real(balance_alg5(basis, sol.xi, est));
            break;
        }
    }
    snap.chosen = std::move(sol);
    return {action, std::move(snap)};
}

Action Policy::act_ucb1(const EstimatorState& est, long t) const {
    int best = 0;
    double best_index = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < num_arms_; ++k) {
        const double idx = est.arm(k).mean_reward + est.radius(k, t);
        if (idx > best_index) {
            best_index = idx;
            best = k;
        }
    }
    return Action::real(best);
}

Action Policy::act_static(long t, const SubstreamRng& rng) const {
    if (xi_star_.empty()) {
        throw std::logic_error("static-lp baseline needs the oracle solution");
    }
    const double u = rng.uniform(kDomainPolicy, static_cast<uint64_t>(t), 0, 0);
    double acc = 0.0;
    for (int k = 0; k < num_arms_; ++k) {
        acc += xi_star_[k];
        if (u < acc) return Action::real(k);
    }
    return Action::skip();
}

std::pair<Action, UcbLpSnapshot> Policy::act_adaptive(const EstimatorState& est,
                                                      const EnvState& env, long t,
                                                      const SubstreamRng& rng) {
    const double remaining_horizon = static_cast<double>(horizon_) - static_cast<double>(t) + 1.0;
    if (remaining_horizon <= 0.0) return {Action::skip(), UcbLpSnapshot{}};

    LpProblem lp;
    lp.objective.resize(num_arms_);
    lp.costs = Mat(num_resources_, num_arms_);
    lp.rhs.resize(num_resources_);
    for (int k = 0; k < num_arms_; ++k) {
        const ArmStats& s = est.arm(k);
        const double eps = est.radius(k, t);
        lp.objective[k] = s.mean_reward + eps;
        for (int i = 0; i < num_resources_ - 1; ++i) {
            lp.costs(i, k) = s.mean_costs[i] - eps;
        }
        lp.costs(num_resources_ - 1, k) = 1.0;
    }
    for (int i = 0; i < num_resources_ - 1; ++i) {
        const double budget = budget_ratios_[i] * static_cast<double>(horizon_);
        const double ratio = std::max(0.0, (budget - env.consumed[i]) / remaining_horizon);
        lp.rhs[i] = (1.0 - cfg_.gamma) * ratio;
    }
    lp.rhs[num_resources_ - 1] = 1.0;

    BasicSolution sol = solve_cached(lp);
    UcbLpSnapshot snap;
    snap.inflated_rewards = lp.objective;
    snap.deflated_costs = lp.costs;
    snap.rhs = lp.rhs;

    const double u = rng.uniform(kDomainPolicy, static_cast<uint64_t>(t), 0, 0);
    double acc = 0.0;
    Action action = Action::skip();
    for (int k = 0; k < num_arms_; ++k) {
        acc += std::max(sol.xi[k], 0.0);
        if (u < acc) {
            action = Action::real(k);
            break;
        }
    }
    snap.chosen = std::move(sol);
    return {action, std::move(snap)};
}

void Policy::set_oracle_solution(std::vector<double> xi_star) {
    xi_star_ = std::move(xi_star);
}

} // namespace bwk
