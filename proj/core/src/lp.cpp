#include "bwk/lp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace bwk {

namespace {

// Largest basis dimension solved on the stack; beyond this the generic heap
// path is used. min(K, C) stays tiny for every workload in this project.
constexpr std::size_t kStackDim = 16;

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// In-place partial-pivot elimination on the augmented system [a | b], a d x d.
// Returns det(a); leaves x in b on success. If a pivot falls below
// kSingularTol in absolute value, returns the (near-)zero det and leaves b
// unspecified.
double solve_square(double* a, double* b, std::size_t d) {
    double det = 1.0;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        double best = std::abs(a[col * d + col]);
        for (std::size_t r = col + 1; r < d; ++r) {
            double v = std::abs(a[r * d + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best <= kSingularTol) {
            double diag = a[piv * d + col];
            return det * diag; // report the collapsed pivot product as det
        }
        if (piv != col) {
            for (std::size_t j = col; j < d; ++j) std::swap(a[piv * d + j], a[col * d + j]);
            std::swap(b[piv], b[col]);
            det = -det;
        }
        double p = a[col * d + col];
        det *= p;
        for (std::size_t r = col + 1; r < d; ++r) {
            double f = a[r * d + col] / p;
            if (f == 0.0) continue;
            for (std::size_t j = col + 1; j < d; ++j) a[r * d + j] -= f * a[col * d + j];
            a[r * d + col] = 0.0;
            b[r] -= f * b[col];
        }
    }
    for (std::size_t r = d; r-- > 0;) {
        double s = b[r];
        for (std::size_t j = r + 1; j < d; ++j) s -= a[r * d + j] * b[j];
        b[r] = s / a[r * d + r];
    }
    return det;
}

} // namespace

void throw_if_unbounded_column(const LpProblem& p) {
    const int K = p.num_arms();
    const int C = p.num_resources();
    for (int k = 0; k < K; ++k) {
        if (p.objective[k] <= 0.0) continue;
        bool all_nonpositive = true;
        for (int i = 0; i < C; ++i) {
            if (p.costs(i, k) > 0.0) {
                all_nonpositive = false;
                break;
            }
        }
        if (all_nonpositive) {
            throw UnboundedLpError("column " + std::to_string(k) +
                                   " has positive objective and no positive cost entry");
        }
    }
}

namespace {

void combinations_lex(int n, int d, std::vector<int>& cur,
                      const std::function<void(const std::vector<int>&)>& emit, int next = 0) {
    if (static_cast<int>(cur.size()) == d) {
        emit(cur);
        return;
    }
    for (int j = next; j <= n - (d - static_cast<int>(cur.size())); ++j) {
        cur.push_back(j);
        combinations_lex(n, d, cur, emit, j + 1);
        cur.pop_back();
    }
}

// Subsets of {0..n-1} in lexicographic order of their increasing-index vectors,
// sizes restricted to 0..max_size.
void subsets_lex(int n, int max_size, std::vector<int>& cur,
                 const std::function<void(const std::vector<int>&)>& emit, int next = 0) {
    emit(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (int j = next; j < n; ++j) {
        cur.push_back(j);
        subsets_lex(n, max_size, cur, emit, j + 1);
        cur.pop_back();
    }
}

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

struct Candidate {
    double objective = -std::numeric_limits<double>::infinity();
    double det = 0.0;
    bool found = false;
    std::size_t index = 0;
    std::vector<double> xi_basis; // values in basis-arm order
};

} // namespace

// Core per-basis solve: writes basic variable values into x (size basis.size())
// and returns det. Feasibility is not checked here.
double solve_basis_system(const LpProblem& p, const PseudoBasis& basis, double* a, double* x) {
    const std::size_t d = basis.size();
    for (std::size_t r = 0; r < d; ++r) {
        const int res = basis.resources[r];
        for (std::size_t c = 0; c < d; ++c) a[r * d + c] = p.costs(res, basis.arms[c]);
        x[r] = p.rhs[res];
    }
    return solve_square(a, x, d);
}

bool basic_point_feasible(const LpProblem& p, const PseudoBasis& basis, const double* x) {
    const std::size_t d = basis.size();
    for (std::size_t c = 0; c < d; ++c) {
        if (x[c] < -kFeasTol) return false;
    }
    const int C = p.num_resources();
    for (int i = 0; i < C; ++i) {
        double s = 0.0;
        for (std::size_t c = 0; c < d; ++c) s += p.costs(i, basis.arms[c]) * x[c];
        if (s > p.rhs[i] + kFeasTol) return false;
    }
    return true;
}

std::string PseudoBasis::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < arms.size(); ++i) os << (i ? "," : "") << arms[i];
    os << "|";
    for (std::size_t i = 0; i < resources.size(); ++i) os << (i ? "," : "") << resources[i];
    os << "]";
    return os.str();
}

std::size_t PseudoBasisHash::operator()(const PseudoBasis& b) const noexcept {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int v : b.arms) h = mix64(h ^ static_cast<uint64_t>(v + 1));
    h = mix64(h ^ 0xa5a5a5a5ULL);
    for (int v : b.resources) h = mix64(h ^ static_cast<uint64_t>(v + 1));
    return static_cast<std::size_t>(h);
}

void LpProblem::validate() const {
    const std::size_t K = objective.size();
    const std::size_t C = rhs.size();
    if (costs.rows() != C || costs.cols() != K) {
        throw std::invalid_argument("LpProblem: cost matrix is " + std::to_string(costs.rows()) +
                                    "x" + std::to_string(costs.cols()) + ", expected " +
                                    std::to_string(C) + "x" + std::to_string(K));
    }
    for (double b : rhs) {
        if (!(b >= 0.0)) throw std::invalid_argument("LpProblem: rhs entries must be >= 0");
    }
}

std::vector<PseudoBasis> enumerate_pseudo_bases(int num_arms, int num_resources,
                                                std::size_t cap) {
    if (num_arms < 1 || num_resources < 1) {
        throw std::invalid_argument("enumerate_pseudo_bases: need K >= 1 and C >= 1");
    }
    const int dmax = std::min(num_arms, num_resources);
    double total = 0.0;
    for (int d = 0; d <= dmax; ++d) total += binom(num_arms, d) * binom(num_resources, d);
    if (total > static_cast<double>(cap)) {
        throw CapacityError("pseudo-basis count " + std::to_string(total) +
                            " exceeds enumeration cap " + std::to_string(cap));
    }

    std::vector<PseudoBasis> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<int> res_cur;
    std::vector<int> arm_cur;
    subsets_lex(num_resources, dmax, res_cur, [&](const std::vector<int>& res) {
        const int d = static_cast<int>(res.size());
        combinations_lex(num_arms, d, arm_cur, [&](const std::vector<int>& arms) {
            out.push_back(PseudoBasis{arms, res});
        });
    });
    return out;
}

BasicSolution solve_basic(const LpProblem& problem, const PseudoBasis& basis) {
    problem.validate();
    const std::size_t d = basis.size();
    if (basis.resources.size() != d) {
        throw std::invalid_argument("solve_basic: |arm_set| != |resource_set|");
    }
    for (int k : basis.arms) {
        if (k < 0 || k >= problem.num_arms()) throw std::invalid_argument("solve_basic: arm index out of range");
    }
    for (int i : basis.resources) {
        if (i < 0 || i >= problem.num_resources()) throw std::invalid_argument("solve_basic: resource index out of range");
    }

    BasicSolution sol;
    sol.basis = basis;
    sol.xi.assign(problem.objective.size(), 0.0);

    std::vector<double> a(d * d), x(d);
    sol.det_value = d == 0 ? 1.0 : solve_basis_system(problem, basis, a.data(), x.data());
    sol.is_basis = std::abs(sol.det_value) > kSingularTol;
    if (!sol.is_basis) return sol; // xi stays zeroed

    for (std::size_t c = 0; c < d; ++c) sol.xi[basis.arms[c]] = x[c];
    for (std::size_t c = 0; c < d; ++c) sol.objective += problem.objective[basis.arms[c]] * x[c];
    sol.is_feasible = basic_point_feasible(problem, basis, x.data());
    return sol;
}

OptimalBasisResult optimal_basis(const LpProblem& problem) {
    problem.validate();
    throw_if_unbounded_column(problem);

    OptimalBasisResult result;
    const auto bases = enumerate_pseudo_bases(problem.num_arms(), problem.num_resources());
    bool found = false;
    for (const auto& basis : bases) {
        BasicSolution sol = solve_basic(problem, basis);
        if (!sol.is_feasible) continue;
        if (!found || sol.objective > result.best.objective) {
            result.best = sol;
            found = true;
        }
        result.feasible.push_back(std::move(sol));
    }
    if (!found) {
        // rhs >= 0 makes the empty basis feasible, so this cannot trigger.
        throw UnboundedLpError("no feasible basis found");
    }
    return result;
}

BasicSolution best_feasible_basis(const LpProblem& problem,
                                  const std::vector<PseudoBasis>& bases) {
    throw_if_unbounded_column(problem);

    std::array<double, kStackDim * kStackDim> abuf;
    std::array<double, kStackDim> xbuf;
    Candidate best;

    for (std::size_t bi = 0; bi < bases.size(); ++bi) {
        const PseudoBasis& basis = bases[bi];
        const std::size_t d = basis.size();
        if (d > kStackDim) {
            BasicSolution sol = solve_basic(problem, basis);
            if (sol.is_feasible && (!best.found || sol.objective > best.objective)) {
                best.found = true;
                best.objective = sol.objective;
                best.det = sol.det_value;
                best.index = bi;
                best.xi_basis.resize(d);
                for (std::size_t c = 0; c < d; ++c) best.xi_basis[c] = sol.xi[basis.arms[c]];
            }
            continue;
        }
        double det = d == 0 ? 1.0 : solve_basis_system(problem, basis, abuf.data(), xbuf.data());
        if (std::abs(det) <= kSingularTol) continue;
        if (!basic_point_feasible(problem, basis, xbuf.data())) continue;
        double obj = 0.0;
        for (std::size_t c = 0; c < d; ++c) obj += problem.objective[basis.arms[c]] * xbuf[c];
        if (!best.found || obj > best.objective) {
            best.found = true;
            best.objective = obj;
            best.det = det;
            best.index = bi;
            best.xi_basis.assign(xbuf.begin(), xbuf.begin() + d);
        }
    }
    if (!best.found) throw UnboundedLpError("no feasible basis found");

    BasicSolution sol;
    sol.basis = bases[best.index];
    sol.xi.assign(problem.objective.size(), 0.0);
    for (std::size_t c = 0; c < sol.basis.size(); ++c) sol.xi[sol.basis.arms[c]] = best.xi_basis[c];
    sol.objective = best.objective;
    sol.det_value = best.det;
    sol.is_basis = true;
    sol.is_feasible = true;
    return sol;
}

DualSolution solve_dual(const LpProblem& problem) {
    OptimalBasisResult primal = optimal_basis(problem);
    const double opt = primal.best.objective;
    const int C = problem.num_resources();
    const int K = problem.num_arms();

    // The multipliers of the optimal basis are dual feasible for every LP this
    // project builds; ties can in principle select a basis whose multipliers
    // are not, so scan the tied set in enumeration order.
    for (const BasicSolution& cand : primal.feasible) {
        if (cand.objective < opt - kFeasTol) continue;
        const std::size_t d = cand.basis.size();
        std::vector<double> at(d * d), y(d);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                at[r * d + c] = problem.costs(cand.basis.resources[c], cand.basis.arms[r]);
            }
            y[r] = problem.objective[cand.basis.arms[r]];
        }
        if (d > 0 && std::abs(solve_square(at.data(), y.data(), d)) <= kSingularTol) continue;

        DualSolution dual;
        dual.zeta.assign(C, 0.0);
        bool nonneg = true;
        for (std::size_t r = 0; r < d; ++r) {
            if (y[r] < -kFeasTol) {
                nonneg = false;
                break;
            }
            dual.zeta[cand.basis.resources[r]] = std::max(y[r], 0.0);
        }
        if (!nonneg) continue;

        bool dual_feasible = true;
        for (int k = 0; k < K && dual_feasible; ++k) {
            double s = 0.0;
            for (int i = 0; i < C; ++i) s += problem.costs(i, k) * dual.zeta[i];
            if (s < problem.objective[k] - kFeasTol) dual_feasible = false;
        }
        if (!dual_feasible) continue;

        for (int i = 0; i < C; ++i) dual.value += problem.rhs[i] * dual.zeta[i];
        if (std::abs(dual.value - opt) > kFeasTol) {
            throw DualityGapError("duality gap " + std::to_string(dual.value - opt));
        }
        return dual;
    }
    throw DualityGapError("no optimal basis yields dual-feasible multipliers");
}

std::pair<double, Mat> det_and_adjugate(const Mat& a) {
    const std::size_t d = a.rows();
    if (d == 0 || a.cols() != d) throw std::invalid_argument("det_and_adjugate: need square d>=1");
    Mat adj(d, d);
    if (d == 1) {
        adj(0, 0) = 1.0;
        return {a(0, 0), adj};
    }
    if (d == 2) {
        adj(0, 0) = a(1, 1);
        adj(0, 1) = -a(0, 1);
        adj(1, 0) = -a(1, 0);
        adj(1, 1) = a(0, 0);
        return {a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0), adj};
    }
    if (d == 3) {
        double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                     a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                     a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                // adj(i,j) = cofactor(j,i)
                std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
                std::size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                adj(i, j) = a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
            }
        }
        return {det, adj};
    }

    auto minor_det = [&](std::size_t row, std::size_t col) {
        const std::size_t m = d - 1;
        std::vector<double> sub(m * m), rhs(m, 0.0);
        std::size_t rr = 0;
        for (std::size_t r = 0; r < d; ++r) {
            if (r == row) continue;
            std::size_t cc = 0;
            for (std::size_t c = 0; c < d; ++c) {
                if (c == col) continue;
                sub[rr * m + cc] = a(r, c);
                ++cc;
            }
            ++rr;
        }
        return solve_square(sub.data(), rhs.data(), m);
    };

    std::vector<double> full(a.data());
    std::vector<double> zero(d, 0.0);
    double det = solve_square(full.data(), zero.data(), d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            adj(i, j) = sign * minor_det(j, i);
        }
    }
    return {det, adj};
}

NondegeneracyReport audit_nondegeneracy(const Mat& mean_costs, const std::vector<double>& rhs,
                                        double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("audit_nondegeneracy: epsilon must be in [0, 1]");
    }
    LpProblem lp;
    lp.objective.assign(mean_costs.cols(), 0.0);
    lp.costs = mean_costs;
    lp.rhs = rhs;
    lp.validate();

    NondegeneracyReport report;
    report.epsilon = epsilon;
    const auto bases = enumerate_pseudo_bases(lp.num_arms(), lp.num_resources());
    for (const auto& basis : bases) {
        BasicSolution sol = solve_basic(lp, basis);
        BasisAuditRecord rec;
        rec.basis = basis;
        double worst = std::abs(sol.det_value) - epsilon;
        std::string detail = worst < -kFeasTol ? "|det|=" + std::to_string(std::abs(sol.det_value)) : "";
        if (sol.is_feasible) {
            for (int k : basis.arms) {
                double m = sol.xi[k] - epsilon;
                if (m < worst) {
                    worst = m;
                    if (m < -kFeasTol) detail = "xi[" + std::to_string(k) + "]=" + std::to_string(sol.xi[k]);
                }
            }
            for (int i = 0; i < lp.num_resources(); ++i) {
                if (std::find(basis.resources.begin(), basis.resources.end(), i) != basis.resources.end()) continue;
                double used = 0.0;
                for (int k : basis.arms) used += lp.costs(i, k) * sol.xi[k];
                double m = (rhs[i] - used) - epsilon;
                if (m < worst) {
                    worst = m;
                    if (m < -kFeasTol) detail = "slack[" + std::to_string(i) + "]=" + std::to_string(rhs[i] - used);
                }
            }
        }
        rec.margin = worst;
        rec.pass = worst >= -kFeasTol;
        rec.detail = rec.pass ? "" : detail;
        if (!rec.pass) report.pass = false;
        report.records.push_back(std::move(rec));
    }
    return report;
}

int matrix_rank(const Mat& a, double threshold) {
    std::size_t rows = a.rows(), cols = a.cols();
    std::vector<double> m(a.data());
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        double best = std::abs(m[row * cols + col]);
        for (std::size_t r = row + 1; r < rows; ++r) {
            double v = std::abs(m[r * cols + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best <= threshold) continue;
        if (piv != row) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[row * cols + j]);
        }
        double p = m[row * cols + col];
        for (std::size_t r = row + 1; r < rows; ++r) {
            double f = m[r * cols + col] / p;
            if (f == 0.0) continue;
            for (std::size_t j = col; j < cols; ++j) m[r * cols + j] -= f * m[row * cols + j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

} // namespace bwk
