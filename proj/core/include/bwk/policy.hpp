#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bwk/env.hpp"
#include "bwk/estimator.hpp"
#include "bwk/lp.hpp"
#include "bwk/rng.hpp"

// The UCB-Simplex family: per-round optimistic LP (Step-Simplex) plus a
// case-specific load balancer (Step-Load-Balance), and the baseline policies
// it is measured against.

namespace bwk {

struct InitializationError : std::runtime_error {
    explicit InitializationError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class PolicyKind { kUcbSimplex, kUcb1, kStaticLp, kAdaptiveLp };
enum class InitRule { kUntilNonzeroCost, kRhoPullsEach, kOnePullEach, kLogCountPullsEach };
enum class Balancer { kNone, kAlg2, kAlg3, kAlg4, kAlg5Alt, kAlg6Alt };

const char* to_string(PolicyKind k);
const char* to_string(InitRule r);
const char* to_string(Balancer b);

struct PolicyConfig {
    std::string id = "policy";
    PolicyKind kind = PolicyKind::kUcbSimplex;
    CaseTag case_tag = CaseTag::kCase1;
    double lambda = 1.0;
    std::vector<double> eta;   // per resource; empty means all zero
    double kappa = 0.0;        // case 1/3 scenario constant, never estimated
    double epsilon_known = 0.0; // case 4 nondegeneracy margin (Assumption 8)
    InitRule init_rule = InitRule::kUntilNonzeroCost;
    Balancer balancer = Balancer::kNone;
    bool skip_rounds_allowed = true;
    double c_init = 0.0;       // case-4 init scale; <= 0 selects 16/epsilon^2
    double delta_max = 1.0;    // pacing overshoot cap when no constraint binds
    double gamma = 0.0;        // adaptive-lp rhs shave factor, in [0,1)
    int rho = 0;               // case-2 init pulls per arm (cost-matrix rank)
    long init_cap_per_arm = 1000000;

    double eta_for(int resource) const {
        return resource < static_cast<int>(eta.size()) ? eta[resource] : 0.0;
    }
};

// Per-case defaults: case 1 uses lambda = 1+kappa and no deflation; case 2
// lambda = 1; case 3 lambda = 1+2kappa with eta = (1, 0); case 4
// lambda = 1 + 2 (C+1)!^2 / epsilon.
PolicyConfig default_policy(CaseTag tag, int num_resources, double kappa = 0.0,
                            double epsilon_known = 0.0);

struct Action {
    int extended = kSkipArm; // 0 skip, 1..K real arms, K+1..2K unit-cost shadows
    int payoff_arm = -1;     // 0-based real arm the environment sees, -1 = none

    static Action skip() { return {}; }
    static Action real(int arm) { return {real_to_extended(arm), arm}; }
    static Action shadow(int arm, int num_arms) { return {shadow_of(arm, num_arms), arm}; }
};

struct PacingState {
    std::vector<int> mapped_arms;      // extended ids in basis order (dummy appended last)
    std::vector<int> resources;        // mapped resource set, time included
    std::vector<int> direction;        // e aligned with `resources`; time entry 0
    double delta_star = 0.0;
    std::vector<double> base_solution; // p(0), aligned with mapped_arms
    std::vector<double> distribution;  // p(delta*), aligned with mapped_arms
};

struct UcbLpSnapshot {
    std::vector<double> inflated_rewards; // r + lambda * eps
    Mat deflated_costs;                   // c - eta * eps
    std::vector<double> rhs;              // budget ratios (adaptive-lp: remaining ratios)
    BasicSolution chosen;
    double exploit_part = 0.0;            // obj_{x,t}
    double explore_part = 0.0;            // E_{x,t}
    std::optional<PacingState> pacing;                   // alg4
    std::array<int, 2> mapped_pair{-1, -1};              // alg3 [high-cost, low-cost] roles
    std::array<double, 2> pair_deflated_costs{0.0, 0.0}; // alg3 role ordering inputs
};

// ---- load balancers, exposed individually for tests ----

// Lowest-indexed arm k in the basis with n^x_k <= n_x * xi_k / sum(xi).
int balance_alg2(const PseudoBasis& basis, const BasisCounters* counters,
                 const std::vector<double>& frozen_xi);

// Two-arm pacing rule: pull the high-deflated-cost role while at or under the
// pacing target, the other role otherwise. Ids are extended; ties in the
// ordering give the lower id the high-cost role.
int balance_alg3(const std::array<int, 2>& extended_arms,
                 const std::array<double, 2>& deflated_costs, double consumed, long selections,
                 double budget_ratio, bool skip_rounds_allowed, std::array<int, 2>* roles = nullptr);

// Pacing distribution p(delta*) = inv(A_x) (b_{C_x} + delta* e). `est_costs`
// holds the estimated C x K cost matrix of the real arms; the dummy skip
// column is implied. Throws DualityGapError never; singular A_x throws
// std::runtime_error (signals a solver inconsistency upstream).
PacingState balance_alg4(const std::vector<int>& mapped_extended,
                         const std::vector<int>& mapped_resources, const Mat& est_costs,
                         const std::vector<double>& budget_ratios,
                         const BasisCounters* counters, int time_resource, double delta_max);

int sample_pacing_arm(const PacingState& pacing, double u);

// argmax xi_k / n_k over the basis arms (global pull counts), ties to the
// lowest index. alg5 uses ratios frozen at first selection, alg6 the
// current-round solution.
int balance_alg5(const PseudoBasis& basis, const std::vector<double>& xi,
                 const EstimatorState& est);

class Policy {
public:
    Policy(PolicyConfig cfg, int num_arms, int num_resources, std::vector<double> budget_ratios,
           bool time_is_resource, long horizon);

    // Executes the configured initialization pulls round-robin. Returns the
    // number of rounds consumed. Throws InitializationError when the case-1
    // rule exceeds its per-arm cap without observing a nonzero cost. The
    // optional sink sees every init pull (used for trace capture).
    long run_init(EnvState& env, const Instance& instance, EstimatorState& est,
                  const SubstreamRng& rng,
                  const std::function<void(int arm, const Observation&)>& on_pull = {});

    std::pair<Action, UcbLpSnapshot> select_action(const EstimatorState& est, const EnvState& env,
                                                   long t, const SubstreamRng& rng);

    void set_oracle_solution(std::vector<double> xi_star); // static-lp is clairvoyant by design

    const PolicyConfig& config() const { return cfg_; }
    long horizon() const { return horizon_; }
    long init_pulls_per_arm_log_rule() const; // resolved case-4 count
    const std::unordered_map<PseudoBasis, std::vector<double>, PseudoBasisHash>& frozen_ratios()
        const {
        return frozen_xi_;
    }

private:
    LpProblem build_optimistic_lp(const EstimatorState& est, long t) const;
    BasicSolution solve_cached(const LpProblem& problem);
    std::pair<Action, UcbLpSnapshot> act_ucb_simplex(const EstimatorState& est, long t,
                                                     const SubstreamRng& rng);
    Action act_ucb1(const EstimatorState& est, long t) const;
    Action act_static(long t, const SubstreamRng& rng) const;
    std::pair<Action, UcbLpSnapshot> act_adaptive(const EstimatorState& est, const EnvState& env,
                                                  long t, const SubstreamRng& rng);

    PolicyConfig cfg_;
    int num_arms_ = 0;
    int num_resources_ = 0;
    std::vector<double> budget_ratios_;
    bool time_is_resource_ = false;
    long horizon_ = 0;

    std::vector<PseudoBasis> bases_;
    std::unordered_map<PseudoBasis, std::vector<double>, PseudoBasisHash> frozen_xi_;
    std::vector<double> xi_star_; // static-lp only

    // Per-round solve cache: valid while the constraint data is unchanged
    // (deterministic costs keep it hot from the first main-phase round on).
    struct CachedBasis {
        bool usable = false; // invertible and nonnegative basic solution
        double det = 0.0;
        std::vector<double> xi_basis;
    };
    Mat cache_costs_;
    std::vector<double> cache_rhs_;
    std::vector<CachedBasis> cache_;
    bool cache_valid_ = false;
};

} // namespace bwk
