#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Exact linear-algebra and LP machinery over small dense systems.
// All solving goes through exhaustive basis enumeration: the analysis this
// library supports is basis-indexed, so the full table of basic solutions is
// needed anyway and K^C stays small at the scales we run.

namespace bwk {

inline constexpr double kFeasTol = 1e-9;      // constraint / nonnegativity slack
inline constexpr double kSingularTol = 1e-12; // |det| below this counts as singular
inline constexpr std::size_t kDefaultEnumerationCap = 1000000;

struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};
struct UnboundedLpError : std::runtime_error {
    explicit UnboundedLpError(const std::string& msg) : std::runtime_error(msg) {}
};
struct DualityGapError : std::runtime_error {
    explicit DualityGapError(const std::string& msg) : std::runtime_error(msg) {}
};

// Dense row-major matrix. Small by construction (C x K with C <= ~5, K <= ~20).
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool operator==(const Mat&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// A pair of equal-size arm and resource index sets (possibly empty), indices
// strictly increasing, 0-based.
struct PseudoBasis {
    std::vector<int> arms;
    std::vector<int> resources;

    std::size_t size() const { return arms.size(); }
    bool empty() const { return arms.empty(); }
    bool operator==(const PseudoBasis&) const = default;
    std::string to_string() const;
};

struct PseudoBasisHash {
    std::size_t operator()(const PseudoBasis& b) const noexcept;
};

// max sum_k objective[k] * xi_k  s.t.  costs * xi <= rhs, xi >= 0.
struct LpProblem {
    std::vector<double> objective; // length K
    Mat costs;                     // C x K
    std::vector<double> rhs;       // length C, entries >= 0

    int num_arms() const { return static_cast<int>(objective.size()); }
    int num_resources() const { return static_cast<int>(rhs.size()); }
    void validate() const; // throws std::invalid_argument on inconsistent dims
};

struct BasicSolution {
    PseudoBasis basis;
    std::vector<double> xi;  // length K, zero off the basis arm set
    double objective = 0.0;
    bool is_basis = false;   // |det(A_x)| > kSingularTol
    bool is_feasible = false;
    double det_value = 0.0;
};

struct DualSolution {
    std::vector<double> zeta; // length C, >= 0
    double value = 0.0;       // sum_i rhs[i] * zeta[i]
};

// All equal-cardinality subset pairs, cardinality 0..min(K,C), each exactly
// once, ordered lexicographically by resource set then arm set. Throws
// CapacityError if the total count exceeds `cap`.
std::vector<PseudoBasis> enumerate_pseudo_bases(int num_arms, int num_resources,
                                                std::size_t cap = kDefaultEnumerationCap);

// Solves A_x xi_{K_x} = rhs_{C_x} by partial-pivot elimination. Degenerate
// matrices are reported through is_basis=false (xi left zeroed), never thrown.
BasicSolution solve_basic(const LpProblem& problem, const PseudoBasis& basis);

struct OptimalBasisResult {
    BasicSolution best;                  // ties broken by enumeration order
    std::vector<BasicSolution> feasible; // every feasible basic solution, enumeration order
};

// Full sweep over all pseudo-bases. Throws UnboundedLpError when some column
// has all cost entries <= 0 and strictly positive objective (the one pattern
// through which the LPs built by this project can be unbounded).
OptimalBasisResult optimal_basis(const LpProblem& problem);

// Best feasible basic solution over a pre-enumerated basis list, identical tie
// handling, no per-candidate allocation. This is the per-round hot path.
BasicSolution best_feasible_basis(const LpProblem& problem,
                                  const std::vector<PseudoBasis>& bases);

// Low-level pieces of solve_basic for callers that manage their own buffers.
// `a` needs d*d doubles and `x` d doubles; returns det(A_x) and leaves the
// basic variable values in x when the determinant is usable.
double solve_basis_system(const LpProblem& problem, const PseudoBasis& basis, double* a,
                          double* x);
bool basic_point_feasible(const LpProblem& problem, const PseudoBasis& basis, const double* x);
void throw_if_unbounded_column(const LpProblem& problem);

// Dual of the primal above via the optimal basis' simplex multipliers.
// Throws DualityGapError if |primal - dual| > kFeasTol or the multipliers are
// not dual feasible; either signals a solver bug.
DualSolution solve_dual(const LpProblem& problem);

// Exact cofactor expansion for d <= 3, pivoted elimination with sign tracking
// above that. Returns (det, adjugate); A * adj(A) = det(A) * I.
std::pair<double, Mat> det_and_adjugate(const Mat& a);

struct BasisAuditRecord {
    PseudoBasis basis;
    bool pass = true;
    double margin = 0.0;     // smallest audited quantity minus epsilon
    std::string detail;      // empty when passing
};

struct NondegeneracyReport {
    double epsilon = 0.0;
    bool pass = true;
    std::vector<BasisAuditRecord> records; // enumeration order
};

// Epsilon-non-degeneracy audit of the LP given by (mean_costs, rhs): every
// pseudo-basis needs |det(A_x)| >= epsilon, and every feasible basis needs all
// basic variables and all nonbinding slacks >= epsilon.
NondegeneracyReport audit_nondegeneracy(const Mat& mean_costs, const std::vector<double>& rhs,
                                        double epsilon);

// Rank of a matrix by pivoted elimination with the given threshold.
int matrix_rank(const Mat& a, double threshold = 1e-9);

} // namespace bwk
