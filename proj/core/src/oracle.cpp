#include "bwk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bwk {

GapTable analyze(const Instance& instance, double audit_epsilon) {
    instance.validate();
    const LpProblem lp = true_mean_lp(instance);
    OptimalBasisResult solved = optimal_basis(lp);

    GapTable table;
    table.optimal = solved.best;
    table.feasible = std::move(solved.feasible);
    double delta_min = 0.0;
    for (const BasicSolution& sol : table.feasible) {
        const double gap = table.optimal.objective - sol.objective;
        table.gaps.emplace_back(sol.basis, gap);
        if (gap > kFeasTol && (delta_min == 0.0 || gap < delta_min)) delta_min = gap;
    }
    table.delta_min = delta_min;
    table.rho = matrix_rank(lp.costs);
    table.audit = audit_nondegeneracy(lp.costs, lp.rhs, audit_epsilon);
    return table;
}

double payoff_bound(const Instance& instance) {
    const LpProblem lp = true_mean_lp(instance);
    const double opt = optimal_basis(lp).best.objective;
    double ratio = 0.0;
    for (int k = 0; k < lp.num_arms(); ++k) {
        for (int i = 0; i < lp.num_resources(); ++i) {
            if (lp.costs(i, k) > 0.0) ratio = std::max(ratio, lp.objective[k] / lp.costs(i, k));
        }
    }
    return instance.scale * opt + ratio;
}

RegretEstimate regret_report(const std::vector<EpisodeStats>& episodes,
                             const Instance& instance) {
    if (episodes.size() < 2) {
        throw std::invalid_argument("regret_report: need at least 2 episodes");
    }
    RegretEstimate est;
    est.episodes = static_cast<long>(episodes.size());
    est.lp_payoff_bound = payoff_bound(instance);

    double sum = 0.0, tau_sum = 0.0;
    for (const auto& ep : episodes) {
        sum += ep.total_payoff;
        tau_sum += ep.tau_star;
    }
    const double n = static_cast<double>(episodes.size());
    est.mean_realized_payoff = sum / n;
    est.mean_tau = tau_sum / n;

    double var = 0.0, tau_var = 0.0;
    for (const auto& ep : episodes) {
        var += (ep.total_payoff - est.mean_realized_payoff) * (ep.total_payoff - est.mean_realized_payoff);
        tau_var += (ep.tau_star - est.mean_tau) * (ep.tau_star - est.mean_tau);
    }
    var /= n - 1.0;
    tau_var /= n - 1.0;
    est.ci_halfwidth = 1.96 * std::sqrt(var / n);
    est.tau_ci_halfwidth = 1.96 * std::sqrt(tau_var / n);
    est.pseudo_regret_ub = est.lp_payoff_bound - est.mean_realized_payoff;

    const double eps = instance.min_positive_mean_cost();
    if (instance.case_tag == CaseTag::kCase1 && eps > 0.0) {
        est.tau_bound = (instance.scale + 1.0) / eps;
        est.tau_bound_defined = true;
    } else if (instance.case_tag == CaseTag::kCase2 && eps > 0.0) {
        double ratio_sum = 0.0;
        for (double b : instance.budget_ratios) ratio_sum += b;
        est.tau_bound = ratio_sum * instance.scale / eps + 1.0;
        est.tau_bound_defined = true;
    }
    return est;
}

GrowthDiagnostics growth_diagnostics(const std::vector<std::pair<double, double>>& curve) {
    if (curve.size() < 3) {
        throw std::invalid_argument("growth_diagnostics: need at least 3 grid points");
    }
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (curve[i].first <= curve[i - 1].first) {
            throw std::invalid_argument("growth_diagnostics: grid must be strictly increasing");
        }
    }

    GrowthDiagnostics diag;
    auto fit = [&](auto transform, double& slope, double& intercept, double& rms) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(curve.size());
        for (const auto& [b, y] : curve) {
            const double x = transform(b);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double denom = n * sxx - sx * sx;
        slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
        intercept = (sy - slope * sx) / n;
        double ss = 0.0;
        for (const auto& [b, y] : curve) {
            const double r = y - (slope * transform(b) + intercept);
            ss += r * r;
        }
        rms = std::sqrt(ss / n);
    };
    fit([](double b) { return std::log(b); }, diag.log_slope, diag.log_intercept,
        diag.log_rms_residual);
    fit([](double b) { return std::sqrt(b); }, diag.sqrt_slope, diag.sqrt_intercept,
        diag.sqrt_rms_residual);

    for (const auto& [b, y] : curve) {
        diag.log_ratio.push_back(y / std::log(b));
        diag.sqrt_ratio.push_back(y / std::sqrt(b));
    }

    const double first = curve.front().second;
    diag.degenerate = std::all_of(curve.begin(), curve.end(),
                                  [&](const auto& p) { return p.second == first; });
    return diag;
}

} // namespace bwk
