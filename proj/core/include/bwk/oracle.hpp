#pragma once

#include <vector>

#include "bwk/env.hpp"
#include "bwk/lp.hpp"

// Clairvoyant quantities: the LP payoff bound, optimal basis, per-basis gap
// table, pseudo-regret accounting, and regret-growth diagnostics. Everything
// here sees ground-truth means; policies never do.

namespace bwk {

struct GapTable {
    BasicSolution optimal;                              // x*
    std::vector<BasicSolution> feasible;                // enumeration order
    std::vector<std::pair<PseudoBasis, double>> gaps;   // Delta_x per feasible basis
    double delta_min = 0.0;  // smallest positive gap; 0 when all feasible bases tie
    int rho = 0;             // rank of the mean cost matrix
    NondegeneracyReport audit;
};

GapTable analyze(const Instance& instance, double audit_epsilon = 0.0);

// B * obj_{x*} plus the constant term max_{k,i: cost>0} reward/cost.
double payoff_bound(const Instance& instance);

struct EpisodeStats {
    double total_payoff = 0.0; // sum of rewards strictly before tau*
    double tau_star = 0.0;
};

struct RegretEstimate {
    double lp_payoff_bound = 0.0;
    double mean_realized_payoff = 0.0;
    double pseudo_regret_ub = 0.0; // bound minus realized; an upper bound, not ROPT regret
    double ci_halfwidth = 0.0;     // 95% normal CI on the payoff mean
    double mean_tau = 0.0;
    double tau_ci_halfwidth = 0.0;
    double tau_bound = 0.0;        // case 1: (B+1)/eps; case 2: sum b(i) B / eps + 1
    bool tau_bound_defined = false;
    long episodes = 0;
};

RegretEstimate regret_report(const std::vector<EpisodeStats>& episodes, const Instance& instance);

struct GrowthDiagnostics {
    // least-squares fits regret ~ a ln(B) + c and regret ~ a' sqrt(B) + c'
    double log_slope = 0.0, log_intercept = 0.0, log_rms_residual = 0.0;
    double sqrt_slope = 0.0, sqrt_intercept = 0.0, sqrt_rms_residual = 0.0;
    std::vector<double> log_ratio;  // regret(B) / ln(B) across the grid
    std::vector<double> sqrt_ratio; // regret(B) / sqrt(B)
    bool degenerate = false;        // all regrets equal; slopes meaningless
};

// `curve` maps scale B to a regret value; needs >= 3 points on an increasing grid.
GrowthDiagnostics growth_diagnostics(const std::vector<std::pair<double, double>>& curve);

} // namespace bwk
