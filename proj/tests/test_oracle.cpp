#include "doctest.h"

#include <cmath>

#include "bwk/oracle.hpp"

using namespace bwk;

namespace {

Instance case3_reference(double scale = 1000.0) {
    Mat costs(2, 2);
    costs(0, 0) = 0.8;
    costs(0, 1) = 0.2;
    costs(1, 0) = costs(1, 1) = 1.0;
    return make_tabular_instance({0.9, 0.3}, costs, {0.5, 1.0}, true, CaseTag::kCase3,
                                 ArmKind::kBernoulliJoint)
        .with_scale(scale);
}

double gap_of(const GapTable& table, const PseudoBasis& basis) {
    for (const auto& [b, gap] : table.gaps) {
        if (b == basis) return gap;
    }
    FAIL("basis not in the gap table: ", basis.to_string());
    return -1.0;
}

} // namespace

TEST_CASE("analyze builds the full gap table") {
    SUBCASE("two-arm reference instance") {
        GapTable table = analyze(case3_reference(), 0.03);
        CHECK(table.optimal.basis.arms == std::vector<int>{0, 1});
        CHECK(table.optimal.objective == doctest::Approx(0.6));
        // arm 2 paired with time: obj 0.3
        CHECK(gap_of(table, PseudoBasis{{1}, {1}}) == doctest::Approx(0.3));
        // arm 1 on the resource: xi = 0.625, obj 0.5625
        CHECK(gap_of(table, PseudoBasis{{0}, {0}}) == doctest::Approx(0.0375));
        CHECK(table.delta_min == doctest::Approx(0.0375));
        CHECK(table.rho == 2);
        CHECK(table.audit.pass);
        CHECK(table.audit.epsilon == 0.03);
    }
    SUBCASE("identical arms give zero gaps on the binding resource") {
        Mat costs(1, 2);
        costs(0, 0) = costs(0, 1) = 0.5;
        Instance inst = make_tabular_instance({0.4, 0.4}, costs, {1.0}, false, CaseTag::kCase1,
                                              ArmKind::kTabular)
                            .with_scale(100.0);
        GapTable table = analyze(inst);
        for (const auto& [basis, gap] : table.gaps) {
            if (basis.size() == 1) CHECK(gap == doctest::Approx(0.0));
        }
        CHECK(table.delta_min == doctest::Approx(0.8)); // only the empty basis trails
    }
    SUBCASE("single arm, time only") {
        Mat costs(1, 1);
        costs(0, 0) = 1.0;
        Instance inst = make_tabular_instance({0.7}, costs, {1.0}, true, CaseTag::kCase1,
                                              ArmKind::kDeterministicCost)
                            .with_scale(50.0);
        GapTable table = analyze(inst);
        CHECK(table.optimal.objective == doctest::Approx(0.7));
        CHECK(table.feasible.size() == 2); // empty + the arm
    }
}

TEST_CASE("payoff_bound adds the worst reward-to-cost ratio") {
    SUBCASE("reference instance") {
        // obj* = 0.6, max ratio = 0.3/0.2 = 1.5
        CHECK(payoff_bound(case3_reference(1000.0)) == doctest::Approx(601.5));
    }
    SUBCASE("zero rewards give a zero bound") {
        Mat costs(1, 1);
        costs(0, 0) = 0.5;
        Instance inst = make_tabular_instance({0.0}, costs, {1.0}, false, CaseTag::kCase1,
                                              ArmKind::kTabular)
                            .with_scale(100.0);
        CHECK(payoff_bound(inst) == doctest::Approx(0.0));
    }
    SUBCASE("time only: T max reward plus max reward") {
        Mat costs(1, 2);
        costs(0, 0) = costs(0, 1) = 1.0;
        Instance inst = make_tabular_instance({0.7, 0.4}, costs, {1.0}, true, CaseTag::kCase1,
                                              ArmKind::kTabular)
                            .with_scale(100.0);
        CHECK(payoff_bound(inst) == doctest::Approx(100.0 * 0.7 + 0.7));
    }
}

TEST_CASE("regret_report aggregates episodes against the bound") {
    SUBCASE("degenerate sanity instance") {
        Mat costs(1, 1);
        costs(0, 0) = 1.0;
        Instance inst = make_tabular_instance({1.0}, costs, {1.0}, true, CaseTag::kCase1,
                                              ArmKind::kDeterministicCost)
                            .with_scale(100.0);
        std::vector<EpisodeStats> eps{{100.0, 101.0}, {100.0, 101.0}};
        RegretEstimate est = regret_report(eps, inst);
        CHECK(est.lp_payoff_bound == doctest::Approx(101.0));
        CHECK(est.mean_realized_payoff == doctest::Approx(100.0));
        CHECK(est.pseudo_regret_ub == doctest::Approx(1.0));
        CHECK(est.ci_halfwidth == doctest::Approx(0.0));
    }
    SUBCASE("case-1 stopping bound (B+1)/eps") {
        Mat costs(1, 2);
        costs(0, 0) = 0.3;
        costs(0, 1) = 0.6;
        Instance inst = make_tabular_instance({0.5, 0.4}, costs, {1.0}, false, CaseTag::kCase1,
                                              ArmKind::kTabular)
                            .with_scale(90.0);
        std::vector<EpisodeStats> eps{{10.0, 200.0}, {12.0, 220.0}};
        RegretEstimate est = regret_report(eps, inst);
        CHECK(est.tau_bound_defined);
        CHECK(est.tau_bound == doctest::Approx(91.0 / 0.3));
        CHECK(est.mean_tau == doctest::Approx(210.0));
    }
    SUBCASE("case-2 stopping bound sum b(i) B / eps + 1") {
        Mat costs(2, 2);
        costs(0, 0) = 0.4;
        costs(0, 1) = 0.0;
        costs(1, 0) = 0.0;
        costs(1, 1) = 0.5;
        Instance inst = make_tabular_instance({0.5, 0.4}, costs, {0.5, 0.8}, false, CaseTag::kCase2,
                                              ArmKind::kDeterministicCost)
                            .with_scale(100.0);
        std::vector<EpisodeStats> eps{{10.0, 200.0}, {12.0, 220.0}};
        RegretEstimate est = regret_report(eps, inst);
        CHECK(est.tau_bound == doctest::Approx(1.3 * 100.0 / 0.4 + 1.0));
    }
    SUBCASE("needs two episodes") {
        std::vector<EpisodeStats> eps{{1.0, 2.0}};
        CHECK_THROWS_AS(regret_report(eps, case3_reference()), std::invalid_argument);
    }
}

TEST_CASE("growth diagnostics separate log from sqrt curves") {
    SUBCASE("pure logarithmic curve") {
        std::vector<std::pair<double, double>> curve;
        for (double b : {1e3, 1e4, 1e5}) curve.emplace_back(b, 10.0 * std::log(b));
        GrowthDiagnostics d = growth_diagnostics(curve);
        CHECK(d.log_rms_residual == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(d.log_slope == doctest::Approx(10.0));
        for (double r : d.log_ratio) CHECK(r == doctest::Approx(10.0));
        CHECK(d.log_rms_residual < d.sqrt_rms_residual);
        CHECK_FALSE(d.degenerate);
    }
    SUBCASE("pure sqrt curve") {
        std::vector<std::pair<double, double>> curve;
        for (double b : {1e3, 1e4, 1e5}) curve.emplace_back(b, 2.0 * std::sqrt(b));
        GrowthDiagnostics d = growth_diagnostics(curve);
        CHECK(d.sqrt_rms_residual == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(d.sqrt_slope == doctest::Approx(2.0));
        CHECK(d.sqrt_rms_residual < d.log_rms_residual);
        CHECK(d.log_ratio[0] < d.log_ratio[1]);
        CHECK(d.log_ratio[1] < d.log_ratio[2]); // sqrt growth inflates the log ratio
    }
    SUBCASE("constant curve flags degenerate slopes") {
        std::vector<std::pair<double, double>> curve{{1e3, 5.0}, {1e4, 5.0}, {1e5, 5.0}};
        GrowthDiagnostics d = growth_diagnostics(curve);
        CHECK(d.degenerate);
    }
    SUBCASE("rejects malformed grids") {
        std::vector<std::pair<double, double>> two{{1e3, 1.0}, {1e4, 2.0}};
        CHECK_THROWS_AS(growth_diagnostics(two), std::invalid_argument);
        std::vector<std::pair<double, double>> unsorted{{1e4, 1.0}, {1e3, 2.0}, {1e5, 3.0}};
        CHECK_THROWS_AS(growth_diagnostics(unsorted), std::invalid_argument);
    }
}

TEST_CASE("property: gaps equal independent per-basis re-solves") {
    GapTable table = analyze(case3_reference(500.0));
    const LpProblem lp = true_mean_lp(case3_reference(500.0));
    for (std::size_t i = 0; i < table.feasible.size(); ++i) {
        const BasicSolution fresh = solve_basic(lp, table.feasible[i].basis);
        REQUIRE(fresh.is_feasible);
        CHECK(std::abs(table.gaps[i].second - (table.optimal.objective - fresh.objective)) <=
              1e-12);
    }
}
