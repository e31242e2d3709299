#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "hoffman/linalg.hpp"
#include "hoffman/norms.hpp"

namespace hoffman::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class LpStatus { optimal, infeasible, unbounded };

struct Bound {
    double lower = -kInf;
    double upper = kInf;
};

/// minimize objective·x  s.t.  eq_matrix x = eq_rhs,  ineq_matrix x <= ineq_rhs,
/// bounds[j].lower <= x_j <= bounds[j].upper.  An empty bounds vector means
/// every variable is free.
struct LinearProgram {
    Vector objective;
    DenseMatrix eq_matrix;
    Vector eq_rhs;
    DenseMatrix ineq_matrix;
    Vector ineq_rhs;
    std::vector<Bound> bounds;

    explicit LinearProgram(std::size_t num_vars = 0)
        : objective(num_vars, 0.0), eq_matrix(0, num_vars), ineq_matrix(0, num_vars) {}

    std::size_t num_vars() const noexcept { return objective.size(); }
};

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    double value = 0.0;
    Vector point;
    /// One multiplier per equality row followed by one per inequality row,
    /// with objective = eq^T y_eq + ineq^T y_ineq + (bound multipliers) and
    /// y_ineq <= 0.
    Vector dual_point;
    int pivots = 0;
};

struct SolverOptions {
    double tol = 1e-9;
    int max_pivots = 0;  ///< 0 selects a budget proportional to the tableau size
};

/// Two-phase dense simplex with Bland's anti-cycling rule.
LpResult solve_lp(const LinearProgram& p, const SolverOptions& opts = {});

/// {x : ineq_matrix x <= ineq_rhs, eq_matrix x = eq_rhs}
struct HPolytope {
    DenseMatrix ineq_matrix;
    Vector ineq_rhs;
    DenseMatrix eq_matrix;
    Vector eq_rhs;

    explicit HPolytope(std::size_t dim = 0) : ineq_matrix(0, dim), eq_matrix(0, dim) {}

    std::size_t dim() const noexcept { return std::max(ineq_matrix.cols(), eq_matrix.cols()); }
    void add_ineq(std::span<const double> row, double rhs);
    void add_eq(std::span<const double> row, double rhs);
    bool contains(std::span<const double> x, double tol = 1e-8) const;
};

struct StrictFeasibility {
    bool feasible = false;
    Vector witness;
    double margin = 0.0;  ///< optimal t of  max t s.t. strict rows hold with slack t, t <= 1
};

/// Is there x in `set` with every row in strict_rows satisfied strictly?
/// Solves max t s.t. row_i x + t <= rhs_i (i strict), t <= 1; true iff t > 1e-9.
StrictFeasibility strict_feasibility(const HPolytope& set, const IndexSet& strict_rows);

struct MinNormResult {
    LpStatus status = LpStatus::infeasible;
    double value = 0.0;
    Vector point;
};

/// min ||x|| over the set for a polyhedral norm (L1 or LInf) via an LP.
MinNormResult min_norm_point(NormTag norm, const HPolytope& set);

/// Euclidean projection of the origin onto the set by a primal active-set method
/// (exhaustive active-set enumeration if that stalls).
MinNormResult min_l2_point(const HPolytope& set);

/// Either of the above, by norm.
MinNormResult min_norm_any(NormTag norm, const HPolytope& set);

bool is_feasible(const HPolytope& set);
bool is_bounded(const HPolytope& set);

/// All vertices of a bounded polytope, found by brute force over subsets of
/// inequality rows (lexicographic order of the active index set).
std::vector<Vector> vertices_of_polytope(const HPolytope& set, double dedupe_tol = 1e-8);

}  // namespace hoffman::lp
