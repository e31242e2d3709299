#include "hoffman/lp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "hoffman/error.hpp"

namespace hoffman {

double norm(NormTag n, std::span<const double> v) {
    double acc = 0.0;
    switch (n) {
        case NormTag::L1:
            for (double x : v) acc += std::abs(x);
            return acc;
        case NormTag::L2:
            return linalg::norm2(v);
        case NormTag::LInf:
            return linalg::norm_inf(v);
    }
    return acc;
}

std::string_view to_string(NormTag n) noexcept {
    switch (n) {
        case NormTag::L1: return "l1";
        case NormTag::L2: return "l2";
        case NormTag::LInf: return "linf";
    }
    return "l2";
}

NormTag parse_norm(std::string_view s) {
    if (s == "l1" || s == "L1") return NormTag::L1;
    if (s == "l2" || s == "L2") return NormTag::L2;
    if (s == "linf" || s == "Linf" || s == "LInf" || s == "inf") return NormTag::LInf;
    throw InputError("unknown norm '" + std::string(s) + "'");
}

}  // namespace hoffman

namespace hoffman::lp {

namespace {

// x_j = offset + p, offset - p, or p - q with p, q >= 0.
struct VarMap {
    enum Kind { shift, flip, split } kind = split;
    int col = -1;
    int col2 = -1;
    double offset = 0.0;
};

struct StdRow {
    Vector coeffs;
    double rhs = 0.0;
};

class Tableau {
public:
    Tableau(const std::vector<StdRow>& rows, std::size_t nvars)
        : m_(rows.size()), n_(nvars), width_(nvars + rows.size() + 1),
          t_((m_ + 1) * width_, 0.0), basis_(m_), redundant_(m_, false), sign_(m_, 1.0) {
        for (std::size_t i = 0; i < m_; ++i) {
            sign_[i] = rows[i].rhs < 0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign_[i] * rows[i].coeffs[j];
            at(i, n_ + i) = 1.0;
            at(i, width_ - 1) = sign_[i] * rows[i].rhs;
            basis_[i] = static_cast<int>(n_ + i);
        }
    }

    double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
    double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
    double& obj(std::size_t j) { return t_[m_ * width_ + j]; }
    double rhs(std::size_t i) const { return at(i, width_ - 1); }
    bool is_artificial(std::size_t j) const { return j >= n_ && j < n_ + m_; }

    void set_objective(const Vector& cost) {
        // reduced costs c_j - c_B^T B^{-1} a_j; rhs cell holds -c_B^T x_B
        for (std::size_t j = 0; j < width_; ++j) obj(j) = j + 1 < width_ ? cost[j] : 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = cost[basis_[i]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < width_; ++j) obj(j) -= cb * at(i, j);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        const double p = at(r, c);
        for (std::size_t j = 0; j < width_; ++j) at(r, j) /= p;
        at(r, c) = 1.0;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            const double f = at(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width_; ++j) at(i, j) -= f * at(r, j);
            at(i, c) = 0.0;
        }
        basis_[r] = static_cast<int>(c);
        ++pivots_;
    }

    enum class Outcome { optimal, unbounded };

    Outcome run(bool allow_artificial, double tol, int max_pivots) {
        for (;;) {
            if (pivots_ > max_pivots) throw SolverError("simplex pivot limit exceeded");
            std::size_t enter = width_;
            for (std::size_t j = 0; j + 1 < width_; ++j) {
                if (!allow_artificial && is_artificial(j)) continue;
                if (obj(j) < -tol) {
                    enter = j;
                    break;
                }
            }
            if (enter == width_) return Outcome::optimal;
            std::size_t leave = m_;
            double best = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (redundant_[i]) continue;
                const double a = at(i, enter);
                if (a <= tol) continue;
                const double ratio = std::max(rhs(i), 0.0) / a;
                if (leave == m_ || ratio < best - 1e-12 ||
                    (ratio <= best + 1e-12 && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return Outcome::unbounded;
            pivot(leave, enter);
        }
    }

    // After phase 1: pivot artificials out of the basis or flag their rows.
    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!is_artificial(static_cast<std::size_t>(basis_[i]))) continue;
            std::size_t best = n_;
            double mag = 1e-9;
            for (std::size_t j = 0; j < n_; ++j) {
                if (std::abs(at(i, j)) > mag) {
                    mag = std::abs(at(i, j));
                    best = j;
                }
            }
            if (best == n_)
                redundant_[i] = true;
            else
                pivot(i, best);
        }
    }

    Vector primal() const {
        Vector z(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (static_cast<std::size_t>(basis_[i]) < n_) z[basis_[i]] = std::max(rhs(i), 0.0);
        return z;
    }

    Vector row_duals() {
        Vector y(m_);
        for (std::size_t i = 0; i < m_; ++i) y[i] = -obj(n_ + i) * sign_[i];
        return y;
    }

    double objective_value() { return -obj(width_ - 1); }
    bool any_redundant() const { return std::find(redundant_.begin(), redundant_.end(), true) != redundant_.end(); }
    const std::vector<int>& basis() const { return basis_; }
    int pivots() const { return pivots_; }

private:
    std::size_t m_, n_, width_;
    std::vector<double> t_;
    std::vector<int> basis_;
    std::vector<bool> redundant_;
    std::vector<double> sign_;
    int pivots_ = 0;
};

// Re-solve B z_B = b on the original data to clean up accumulated pivoting error.
void refine(const std::vector<StdRow>& rows, const std::vector<int>& basis, std::size_t nvars, Vector& z) {
    const std::size_t m = rows.size();
    DenseMatrix b(m, m);
    Vector rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        rhs[i] = rows[i].rhs;
        for (std::size_t k = 0; k < m; ++k) {
            if (static_cast<std::size_t>(basis[k]) >= nvars) return;
            b(i, k) = rows[i].coeffs[basis[k]];
        }
    }
    auto sol = linalg::solve_square(b, rhs);
    if (!sol) return;
    for (double v : *sol)
        if (v < -1e-9) return;
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t k = 0; k < m; ++k) z[basis[k]] = std::max((*sol)[k], 0.0);
}

}  // namespace

LpResult solve_lp(const LinearProgram& p, const SolverOptions& opts) {
    const std::size_t n = p.num_vars();
    if (p.eq_matrix.rows() != p.eq_rhs.size() || p.ineq_matrix.rows() != p.ineq_rhs.size())
        throw InputError("solve_lp: constraint rows and right-hand sides differ in length");
    if ((p.eq_matrix.rows() > 0 && p.eq_matrix.cols() != n) ||
        (p.ineq_matrix.rows() > 0 && p.ineq_matrix.cols() != n) ||
        (!p.bounds.empty() && p.bounds.size() != n))
        throw InputError("solve_lp: dimension mismatch");

    std::vector<VarMap> vars(n);
    std::size_t nstd = 0;
    std::vector<std::pair<int, double>> upper_rows;  // (std column, width) for p <= width
    for (std::size_t j = 0; j < n; ++j) {
        const Bound b = p.bounds.empty() ? Bound{} : p.bounds[j];
        if (b.lower > b.upper) {
            LpResult r;
            r.status = LpStatus::infeasible;
            return r;
        }
        VarMap& v = vars[j];
        if (std::isfinite(b.lower)) {
            v.kind = VarMap::shift;
            v.offset = b.lower;
            v.col = static_cast<int>(nstd++);
            if (std::isfinite(b.upper)) upper_rows.emplace_back(v.col, b.upper - b.lower);
        } else if (std::isfinite(b.upper)) {
            v.kind = VarMap::flip;
            v.offset = b.upper;
            v.col = static_cast<int>(nstd++);
        } else {
            v.kind = VarMap::split;
            v.col = static_cast<int>(nstd++);
            v.col2 = static_cast<int>(nstd++);
        }
    }
    const std::size_t n_eq = p.eq_matrix.rows();
    const std::size_t n_in = p.ineq_matrix.rows();
    const std::size_t n_slack = n_in + upper_rows.size();
    const std::size_t total = nstd + n_slack;

    std::vector<StdRow> rows;
    rows.reserve(n_eq + n_slack);
    auto push_row = [&](std::span<const double> a, double rhs, int slack) {
        StdRow r;
        r.coeffs.assign(total, 0.0);
        r.rhs = rhs;
        for (std::size_t j = 0; j < n; ++j) {
            const double c = a[j];
            if (c == 0.0) continue;
            const VarMap& v = vars[j];
            r.rhs -= c * v.offset;
            switch (v.kind) {
                case VarMap::shift: r.coeffs[v.col] += c; break;
                case VarMap::flip: r.coeffs[v.col] -= c; break;
                case VarMap::split:
                    r.coeffs[v.col] += c;
                    r.coeffs[v.col2] -= c;
                    break;
            }
        }
        if (slack >= 0) r.coeffs[slack] = 1.0;
        rows.push_back(std::move(r));
    };
    for (std::size_t i = 0; i < n_eq; ++i) push_row(p.eq_matrix.row(i), p.eq_rhs[i], -1);
    for (std::size_t i = 0; i < n_in; ++i)
        push_row(p.ineq_matrix.row(i), p.ineq_rhs[i], static_cast<int>(nstd + i));
    for (std::size_t k = 0; k < upper_rows.size(); ++k) {
        StdRow r;
        r.coeffs.assign(total, 0.0);
        r.coeffs[upper_rows[k].first] = 1.0;
        r.coeffs[nstd + n_in + k] = 1.0;
        r.rhs = upper_rows[k].second;
        rows.push_back(std::move(r));
    }

    Vector cost(total + rows.size(), 0.0);
    double cost_offset = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double c = p.objective[j];
        const VarMap& v = vars[j];
        cost_offset += c * v.offset;
        switch (v.kind) {
            case VarMap::shift: cost[v.col] += c; break;
            case VarMap::flip: cost[v.col] -= c; break;
            case VarMap::split:
                cost[v.col] += c;
                cost[v.col2] -= c;
                break;
        }
    }

    const int max_pivots = opts.max_pivots > 0
                               ? opts.max_pivots
                               : static_cast<int>(50 * (rows.size() + total) + 500);
    LpResult result;
    Tableau tab(rows, total);

    Vector phase1(total + rows.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) phase1[total + i] = 1.0;
    tab.set_objective(phase1);
    tab.run(true, opts.tol, max_pivots);
    double scale = 1.0;
    for (const auto& r : rows) scale = std::max(scale, std::abs(r.rhs));
    if (tab.objective_value() > opts.tol * scale * 10) {
        result.status = LpStatus::infeasible;
        result.pivots = tab.pivots();
        return result;
    }
    tab.drive_out_artificials();
    tab.set_objective(cost);
    if (tab.run(false, opts.tol, max_pivots) == Tableau::Outcome::unbounded) {
        result.status = LpStatus::unbounded;
        result.pivots = tab.pivots();
        return result;
    }

    Vector z = tab.primal();
    if (!tab.any_redundant()) refine(rows, tab.basis(), total, z);
    result.status = LpStatus::optimal;
    result.point.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const VarMap& v = vars[j];
        switch (v.kind) {
            case VarMap::shift: result.point[j] = v.offset + z[v.col]; break;
            case VarMap::flip: result.point[j] = v.offset - z[v.col]; break;
            case VarMap::split: result.point[j] = z[v.col] - z[v.col2]; break;
        }
    }
    result.value = linalg::dot(p.objective, result.point);
    (void)cost_offset;
    Vector y = tab.row_duals();
    result.dual_point.assign(y.begin(), y.begin() + static_cast<long>(n_eq + n_in));
    result.pivots = tab.pivots();
    return result;
}

void HPolytope::add_ineq(std::span<const double> row, double rhs) {
    ineq_matrix = linalg::vstack(ineq_matrix, DenseMatrix(1, row.size(), Vector(row.begin(), row.end())));
    ineq_rhs.push_back(rhs);
}

void HPolytope::add_eq(std::span<const double> row, double rhs) {
    eq_matrix = linalg::vstack(eq_matrix, DenseMatrix(1, row.size(), Vector(row.begin(), row.end())));
    eq_rhs.push_back(rhs);
}

bool HPolytope::contains(std::span<const double> x, double tol) const {
    for (std::size_t i = 0; i < ineq_matrix.rows(); ++i)
        if (linalg::dot(ineq_matrix.row(i), x) > ineq_rhs[i] + tol) return false;
    for (std::size_t i = 0; i < eq_matrix.rows(); ++i)
        if (std::abs(linalg::dot(eq_matrix.row(i), x) - eq_rhs[i]) > tol) return false;
    return true;
}

namespace {

// Embed the set's rows into an LP over `extra` additional trailing variables.
LinearProgram embed(const HPolytope& set, std::size_t extra) {
    const std::size_t n = set.dim();
    LinearProgram lp(n + extra);
    lp.eq_matrix = DenseMatrix(set.eq_matrix.rows(), n + extra);
    for (std::size_t i = 0; i < set.eq_matrix.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) lp.eq_matrix(i, j) = set.eq_matrix(i, j);
    lp.eq_rhs = set.eq_rhs;
    lp.ineq_matrix = DenseMatrix(set.ineq_matrix.rows(), n + extra);
    for (std::size_t i = 0; i < set.ineq_matrix.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) lp.ineq_matrix(i, j) = set.ineq_matrix(i, j);
    lp.ineq_rhs = set.ineq_rhs;
    return lp;
}

void append_ineq(LinearProgram& lp, const Vector& row, double rhs) {
    lp.ineq_matrix = linalg::vstack(lp.ineq_matrix, DenseMatrix(1, row.size(), row));
    lp.ineq_rhs.push_back(rhs);
}

}  // namespace

StrictFeasibility strict_feasibility(const HPolytope& set, const IndexSet& strict_rows) {
    const std::size_t n = set.dim();
    LinearProgram lp = embed(set, 1);
    for (int i : strict_rows) {
        if (i < 0 || static_cast<std::size_t>(i) >= set.ineq_matrix.rows())
            throw InputError("strict_feasibility: row index out of range");
        lp.ineq_matrix(static_cast<std::size_t>(i), n) = 1.0;
    }
    lp.objective[n] = -1.0;
    lp.bounds.assign(n + 1, Bound{});
    lp.bounds[n].upper = 1.0;
    lp.bounds[n].lower = -1.0;
    StrictFeasibility out;
    const LpResult r = solve_lp(lp);
    if (r.status != LpStatus::optimal) return out;
    out.margin = r.point[n];
    out.feasible = out.margin > 1e-9;
    out.witness.assign(r.point.begin(), r.point.begin() + static_cast<long>(n));
    return out;
}

MinNormResult min_norm_point(NormTag norm_tag, const HPolytope& set) {
    const std::size_t n = set.dim();
    MinNormResult out;
    if (norm_tag == NormTag::L2) return min_l2_point(set);
    const std::size_t extra = norm_tag == NormTag::L1 ? n : 1;
    LinearProgram lp = embed(set, extra);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t aux = n + (norm_tag == NormTag::L1 ? i : 0);
        Vector row(n + extra, 0.0);
        row[i] = 1.0;
        row[aux] = -1.0;
        append_ineq(lp, row, 0.0);
        row[i] = -1.0;
        append_ineq(lp, row, 0.0);
    }
    for (std::size_t k = 0; k < extra; ++k) lp.objective[n + k] = 1.0;
    const LpResult r = solve_lp(lp);
    out.status = r.status;
    if (r.status != LpStatus::optimal) return out;
    out.point.assign(r.point.begin(), r.point.begin() + static_cast<long>(n));
    out.value = norm(norm_tag, out.point);
    return out;
}

namespace {

template <class F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return true;
    IndexSet idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<int>(i);
    for (;;) {
        if (!f(idx)) return false;
        std::size_t i = k;
        while (i > 0 && static_cast<std::size_t>(idx[i - 1]) == n - k + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

constexpr double kMaxSubsets = 2e7;

// Primal active-set method for min ||x||_2^2 / 2 (identity Hessian), warm-started
// at the l1-nearest point.  Empty when the iteration budget runs out.
std::optional<MinNormResult> min_l2_active_set(const HPolytope& set) {
    const std::size_t n = set.dim();
    const std::size_t p = set.ineq_matrix.rows();
    MinNormResult out;
    const MinNormResult start = min_norm_point(NormTag::L1, set);
    if (start.status != LpStatus::optimal) {
        out.status = start.status;
        return out;
    }
    Vector x = start.point;
    const double feas_tol = 1e-9 * (1.0 + linalg::norm_inf(set.ineq_rhs) + linalg::norm_inf(set.eq_rhs));
    auto slack = [&](std::size_t i) { return set.ineq_rhs[i] - linalg::dot(set.ineq_matrix.row(i), x); };
    auto stacked = [&](const IndexSet& w) {
        DenseMatrix k = linalg::vstack(set.eq_matrix, set.ineq_matrix.select_rows(w));
        return k.cols() == 0 ? DenseMatrix(k.rows(), n) : k;
    };

    IndexSet work;
    int rank = linalg::rank_tol(set.eq_matrix.rows() > 0 ? set.eq_matrix : DenseMatrix(0, n));
    for (std::size_t i = 0; i < p; ++i) {
        if (std::abs(slack(i)) > feas_tol) continue;
        IndexSet trial = work;
        trial.push_back(static_cast<int>(i));
        const int r = linalg::rank_tol(stacked(trial));
        if (r > rank) {
            work = std::move(trial);
            rank = r;
        }
    }

    const int budget = 50 + 10 * static_cast<int>(p + n);
    for (int iter = 0; iter < budget; ++iter) {
        const DenseMatrix k = stacked(work);
        // Nearest point to the origin on the affine set {y : K y = K x}.
        const Vector y = k.rows() == 0 ? Vector(n, 0.0) : linalg::least_squares(k, linalg::multiply(k, x));
        Vector step(n);
        for (std::size_t j = 0; j < n; ++j) step[j] = y[j] - x[j];
        const double xs = 1.0 + linalg::norm_inf(x);
        if (linalg::norm_inf(step) <= 1e-12 * xs) {
            // Stationary on the working set: y + K^T lambda = 0 with lambda >= 0 on inequalities.
            const Vector neg_y = linalg::scaled(-1.0, y);
            const Vector lambda =
                k.rows() == 0 ? Vector{} : linalg::least_squares(k.transpose(), neg_y);
            const std::size_t ne = set.eq_matrix.rows();
            std::size_t drop = work.size();
            double most = -1e-10 * xs;
            for (std::size_t t = 0; t < work.size(); ++t) {
                if (lambda[ne + t] < most) {
                    most = lambda[ne + t];
                    drop = t;
                }
            }
            if (drop == work.size()) {
                if (!set.contains(y, 10 * feas_tol)) return std::nullopt;
                out.status = LpStatus::optimal;
                out.point = y;
                out.value = linalg::norm2(y);
                return out;
            }
            work.erase(work.begin() + static_cast<long>(drop));
            x = y;
            continue;
        }
        double alpha = 1.0;
        int blocking = -1;
        const double step_norm = linalg::norm2(step);
        for (std::size_t i = 0; i < p; ++i) {
            if (std::find(work.begin(), work.end(), static_cast<int>(i)) != work.end()) continue;
            const auto row = set.ineq_matrix.row(i);
            const double cp = linalg::dot(row, step);
            if (cp <= 1e-14 * linalg::norm2(row) * step_norm) continue;
            const double a = std::max(slack(i), 0.0) / cp;
            if (a < alpha) {
                alpha = a;
                blocking = static_cast<int>(i);
            }
        }
        x = linalg::axpy(alpha, step, x);
        if (blocking >= 0) {
            work.push_back(blocking);
            std::sort(work.begin(), work.end());
        }
    }
    return std::nullopt;
}

MinNormResult min_l2_enumerate(const HPolytope& set) {
    const std::size_t n = set.dim();
    const std::size_t p = set.ineq_matrix.rows();
    const std::size_t kmax = std::min(n, p);
    double count = 0.0;
    for (std::size_t k = 0; k <= kmax; ++k) count += binomial(p, k);
    if (count > kMaxSubsets) throw ScaleError("min_l2_point: too many active sets to enumerate");

    MinNormResult out;
    double best = lp::kInf;
    for (std::size_t k = 0; k <= kmax; ++k) {
        for_each_subset(p, k, [&](const IndexSet& active) {
            DenseMatrix c = linalg::vstack(set.eq_matrix, set.ineq_matrix.select_rows(active));
            if (c.cols() == 0) c = DenseMatrix(0, n);
            Vector d = set.eq_rhs;
            for (int i : active) d.push_back(set.ineq_rhs[i]);
            Vector x = c.rows() == 0 ? Vector(n, 0.0) : linalg::least_squares(c, d);
            const double scale = 1.0 + linalg::norm_inf(d);
            Vector res = linalg::multiply(c, x);
            for (std::size_t i = 0; i < d.size(); ++i)
                if (std::abs(res[i] - d[i]) > 1e-9 * scale) return true;
            if (!set.contains(x, 1e-9 * scale)) return true;
            const double v = linalg::norm2(x);
            if (v < best - 1e-15) {
                best = v;
                out.point = std::move(x);
            }
            return true;
        });
    }
    if (out.point.empty() && n > 0) return out;
    out.status = LpStatus::optimal;
    out.value = n == 0 ? 0.0 : best;
    return out;
}

}  // namespace

MinNormResult min_l2_point(const HPolytope& set) {
    if (auto r = min_l2_active_set(set)) return *r;
    return min_l2_enumerate(set);
}

MinNormResult min_norm_any(NormTag norm_tag, const HPolytope& set) {
    return norm_tag == NormTag::L2 ? min_l2_point(set) : min_norm_point(norm_tag, set);
}

bool is_feasible(const HPolytope& set) {
    LinearProgram lp = embed(set, 0);
    return solve_lp(lp).status == LpStatus::optimal;
}

bool is_bounded(const HPolytope& set) {
    // Bounded (or empty) iff the recession cone is {0}.
    const std::size_t n = set.dim();
    HPolytope rec(n);
    rec.ineq_matrix = set.ineq_matrix;
    rec.ineq_rhs.assign(set.ineq_rhs.size(), 0.0);
    rec.eq_matrix = set.eq_matrix;
    rec.eq_rhs.assign(set.eq_rhs.size(), 0.0);
    LinearProgram lp = embed(rec, 0);
    lp.bounds.assign(n, Bound{-1.0, 1.0});
    for (std::size_t j = 0; j < n; ++j) {
        for (double s : {1.0, -1.0}) {
            std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
            lp.objective[j] = -s;
            const LpResult r = solve_lp(lp);
            if (r.status == LpStatus::optimal && -r.value > 1e-9) return false;
        }
    }
    return true;
}

std::vector<Vector> vertices_of_polytope(const HPolytope& set, double dedupe_tol) {
    const std::size_t n = set.dim();
    std::vector<Vector> out;
    if (!is_feasible(set)) return out;
    if (!is_bounded(set)) throw DomainError("vertices_of_polytope: set is unbounded");

    // Parametrize the affine hull of the equalities: x = x0 + N z.
    Vector x0(n, 0.0);
    DenseMatrix basis = DenseMatrix::identity(n);
    if (set.eq_matrix.rows() > 0) {
        x0 = linalg::least_squares(set.eq_matrix, set.eq_rhs);
        basis = linalg::kernel_basis(set.eq_matrix);
    }
    const std::size_t d = basis.cols();
    if (d == 0) {
        out.push_back(x0);
        return out;
    }
    const DenseMatrix g = set.ineq_matrix * basis;
    Vector h = set.ineq_rhs;
    const Vector gx0 = linalg::multiply(set.ineq_matrix, x0);
    for (std::size_t i = 0; i < h.size(); ++i) h[i] -= gx0[i];

    if (binomial(g.rows(), d) > kMaxSubsets) throw ScaleError("vertices_of_polytope: too many candidate bases");
    const double scale = 1.0 + linalg::norm_inf(set.ineq_rhs);
    for_each_subset(g.rows(), d, [&](const IndexSet& active) {
        const DenseMatrix sub = g.select_rows(active);
        Vector rhs(d);
        for (std::size_t k = 0; k < d; ++k) rhs[k] = h[active[k]];
        auto z = linalg::solve_square(sub, rhs);
        if (!z) return true;
        Vector x = linalg::axpy(1.0, linalg::multiply(basis, *z), x0);
        if (!set.contains(x, 1e-9 * scale)) return true;
        for (const Vector& v : out) {
            double diff = 0.0;
            for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::abs(v[j] - x[j]));
            if (diff <= dedupe_tol) return true;
        }
        out.push_back(std::move(x));
        return true;
    });
    return out;
}

}  // namespace hoffman::lp
