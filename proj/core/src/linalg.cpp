#include "hoffman/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>

#include "hoffman/error.hpp"

namespace hoffman::linalg {

namespace {

std::atomic<std::size_t> g_desk_scale_limit{16};

constexpr int kMaxJacobiSweeps = 80;

}  // namespace

std::size_t desk_scale_limit() { return g_desk_scale_limit.load(); }

void set_desk_scale_limit(std::size_t limit) { g_desk_scale_limit.store(limit); }

void require_desk_scale(std::string_view what, std::size_t dim) {
    if (dim > desk_scale_limit()) {
        throw ScaleError(std::string(what) + ": dimension " + std::to_string(dim) +
                         " exceeds desk-scale limit " + std::to_string(desk_scale_limit()));
    }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (data_.size() != rows_ * cols_) {
        throw InputError("DenseMatrix: entry count " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw InputError("DenseMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<Vector>& rows, std::size_t cols_if_empty) {
    const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
    DenseMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InputError("DenseMatrix::from_rows: ragged rows");
        std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
}

DenseMatrix DenseMatrix::from_columns(const std::vector<Vector>& cols, std::size_t rows_if_empty) {
    const std::size_t rows = cols.empty() ? rows_if_empty : cols.front().size();
    DenseMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw InputError("DenseMatrix::from_columns: ragged columns");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Vector DenseMatrix::row_vector(std::size_t i) const {
    auto r = row(i);
    return Vector(r.begin(), r.end());
}

Vector DenseMatrix::column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix DenseMatrix::select_columns(std::span<const int> cols) const {
    DenseMatrix s(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols.size(); ++k) s(i, k) = (*this)(i, static_cast<std::size_t>(cols[k]));
    return s;
}

DenseMatrix DenseMatrix::select_rows(std::span<const int> rows) const {
    DenseMatrix s(rows.size(), cols_);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        auto src = row(static_cast<std::size_t>(rows[k]));
        std::copy(src.begin(), src.end(), s.row(k).begin());
    }
    return s;
}

DenseMatrix DenseMatrix::scale_columns(std::span<const double> d) const {
    if (d.size() != cols_) throw InputError("scale_columns: length mismatch");
    DenseMatrix s = *this;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) s(i, j) *= d[j];
    return s;
}

DenseMatrix DenseMatrix::scale_rows(std::span<const double> d) const {
    if (d.size() != rows_) throw InputError("scale_rows: length mismatch");
    DenseMatrix s = *this;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) s(i, j) *= d[i];
    return s;
}

bool DenseMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw InputError("matrix product: inner dimension mismatch");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix difference: shape mismatch");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

DenseMatrix vstack(const DenseMatrix& top, const DenseMatrix& bottom) {
    if (top.rows() == 0) return bottom;
    if (bottom.rows() == 0) return top;
    if (top.cols() != bottom.cols()) throw InputError("vstack: column mismatch");
    std::vector<double> data = top.data();
    data.insert(data.end(), bottom.data().begin(), bottom.data().end());
    return DenseMatrix(top.rows() + bottom.rows(), top.cols(), std::move(data));
}

DenseMatrix hstack(const DenseMatrix& left, const DenseMatrix& right) {
    if (left.cols() == 0) return right;
    if (right.cols() == 0) return left;
    if (left.rows() != right.rows()) throw InputError("hstack: row mismatch");
    DenseMatrix m(left.rows(), left.cols() + right.cols());
    for (std::size_t i = 0; i < left.rows(); ++i) {
        for (std::size_t j = 0; j < left.cols(); ++j) m(i, j) = left(i, j);
        for (std::size_t j = 0; j < right.cols(); ++j) m(i, left.cols() + j) = right(i, j);
    }
    return m;
}

Vector multiply(const DenseMatrix& a, std::span<const double> x) {
    if (x.size() != a.cols()) throw InputError("multiply: length mismatch");
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
    return y;
}

Vector multiply_transpose(const DenseMatrix& a, std::span<const double> y) {
    if (y.size() != a.rows()) throw InputError("multiply_transpose: length mismatch");
    Vector x(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) x[j] += a(i, j) * y[i];
    return x;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) {
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double v : a) s += (v / scale) * (v / scale);
    return scale * std::sqrt(s);
}

double norm_inf(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

Vector axpy(double alpha, std::span<const double> x, std::span<const double> y) {
    Vector r(y.begin(), y.end());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += alpha * x[i];
    return r;
}

Vector scaled(double alpha, std::span<const double> x) {
    Vector r(x.begin(), x.end());
    for (double& v : r) v *= alpha;
    return r;
}

double max_abs(const DenseMatrix& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

void require_finite(const DenseMatrix& m, std::string_view what) {
    if (!m.all_finite()) throw InputError(std::string(what) + ": matrix has non-finite entries");
}

namespace {

// Orthogonalize v against the columns of basis (two MGS passes) and return
// the residual.
Vector orthogonalize(const std::vector<Vector>& basis, Vector v) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) {
            const double c = dot(q, v);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
        }
    return v;
}

// Complete an orthonormal family of vectors in R^dim with standard basis
// vectors until it reaches `target` members.
void complete_basis(std::vector<Vector>& basis, std::size_t dim, std::size_t target) {
    for (std::size_t e = 0; e < dim && basis.size() < target; ++e) {
        Vector v(dim, 0.0);
        v[e] = 1.0;
        v = orthogonalize(basis, std::move(v));
        const double n = norm2(v);
        if (n > 1e-8) basis.push_back(scaled(1.0 / n, v));
    }
}

// One-sided Jacobi on the columns of w (tall or square); accumulates the
// right rotations in v.
void jacobi_columns(DenseMatrix& w, DenseMatrix& v) {
    const std::size_t m = w.rows();
    const std::size_t n = w.cols();
    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += w(i, p) * w(i, p);
                    beta += w(i, q) * w(i, q);
                    gamma += w(i, p) * w(i, q);
                }
                if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double wp = w(i, p), wq = w(i, q);
                    w(i, p) = c * wp - s * wq;
                    w(i, q) = s * wp + c * wq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        if (!rotated) return;
    }
}

}  // namespace

std::vector<SingularPair> singular_pairs(const DenseMatrix& m) {
    require_finite(m, "singular_pairs");
    require_desk_scale("singular_pairs", std::min(m.rows(), m.cols()));
    const bool wide = m.rows() < m.cols();
    DenseMatrix w = wide ? m.transpose() : m;
    const std::size_t tall = w.rows();
    const std::size_t k = w.cols();
    DenseMatrix v = DenseMatrix::identity(k);
    jacobi_columns(w, v);

    std::vector<SingularPair> pairs(k);
    double sigma_max = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        pairs[j].sigma = norm2(w.column(j));
        sigma_max = std::max(sigma_max, pairs[j].sigma);
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pairs[a].sigma > pairs[b].sigma; });

    // Tall-side vectors come from normalized columns of w; the ones tied to
    // (numerically) zero singular values are completed instead.
    const double zero_cut = std::max(sigma_max, 1.0) * 1e-13;
    std::vector<Vector> tall_vecs;
    std::vector<SingularPair> sorted;
    sorted.reserve(k);
    std::vector<std::size_t> need_completion;
    for (std::size_t idx = 0; idx < k; ++idx) {
        const std::size_t j = order[idx];
        SingularPair p;
        p.sigma = pairs[j].sigma;
        Vector short_vec = v.column(j);
        Vector tall_vec = w.column(j);
        if (p.sigma > zero_cut) {
            tall_vec = scaled(1.0 / p.sigma, tall_vec);
            tall_vecs.push_back(tall_vec);
        } else {
            p.sigma = std::max(p.sigma, 0.0);
            need_completion.push_back(idx);
            tall_vec.clear();
        }
        if (wide) {
            p.left = std::move(short_vec);
            p.right = std::move(tall_vec);
        } else {
            p.left = std::move(tall_vec);
            p.right = std::move(short_vec);
        }
        sorted.push_back(std::move(p));
    }
    if (!need_completion.empty()) {
        std::vector<Vector> basis = tall_vecs;
        complete_basis(basis, tall, tall_vecs.size() + need_completion.size());
        for (std::size_t c = 0; c < need_completion.size(); ++c) {
            Vector& slot = wide ? sorted[need_completion[c]].right : sorted[need_completion[c]].left;
            slot = basis[tall_vecs.size() + c];
        }
    }
    return sorted;
}

double spectral_norm(const DenseMatrix& m) {
    if (m.empty()) return 0.0;
    return singular_pairs(m).front().sigma;
}

double sigma_min(const DenseMatrix& m) {
    if (m.empty()) return 0.0;
    return singular_pairs(m).back().sigma;
}

int rank_tol(const DenseMatrix& m, double tol) {
    if (m.empty()) return 0;
    const auto pairs = singular_pairs(m);
    const double smax = pairs.front().sigma;
    if (smax <= tol) return 0;
    int r = 0;
    for (const auto& p : pairs)
        if (p.sigma > tol * smax) ++r;
    return r;
}

DenseMatrix range_basis(const DenseMatrix& m, double tol) {
    if (m.empty()) return DenseMatrix(m.rows(), 0);
    const auto pairs = singular_pairs(m);
    const double smax = pairs.front().sigma;
    std::vector<Vector> cols;
    if (smax > tol)
        for (const auto& p : pairs)
            if (p.sigma > tol * smax) cols.push_back(p.left);
    return DenseMatrix::from_columns(cols, m.rows());
}

DenseMatrix orthonormal_complement(const DenseMatrix& q) {
    std::vector<Vector> basis;
    for (std::size_t j = 0; j < q.cols(); ++j) basis.push_back(q.column(j));
    const std::size_t start = basis.size();
    complete_basis(basis, q.rows(), q.rows());
    std::vector<Vector> extra(basis.begin() + static_cast<std::ptrdiff_t>(start), basis.end());
    return DenseMatrix::from_columns(extra, q.rows());
}

DenseMatrix kernel_basis(const DenseMatrix& m, double tol) {
    if (!(tol > 0.0)) throw InputError("kernel_basis: tol must be positive");
    require_finite(m, "kernel_basis");
    if (m.rows() == 0) return DenseMatrix::identity(m.cols());
    // ker(m) is the orthogonal complement of the row space.
    return orthonormal_complement(range_basis(m.transpose(), tol));
}

DenseMatrix orthonormalize_rows(const DenseMatrix& m, double tol) {
    require_finite(m, "orthonormalize_rows");
    std::vector<Vector> rows;
    const double scale = std::max(max_abs(m), 1e-300);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Vector r = orthogonalize(rows, m.row_vector(i));
        const double n = norm2(r);
        if (n <= std::max(tol, 1e-12) * scale)
            throw RankError("orthonormalize_rows: matrix is not full row rank");
        rows.push_back(scaled(1.0 / n, r));
    }
    return DenseMatrix::from_rows(rows, m.cols());
}

std::optional<Vector> solve_square(const DenseMatrix& a, std::span<const double> b, double pivot_tol) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw InputError("solve_square: shape mismatch");
    DenseMatrix lu = a;
    Vector x(b.begin(), b.end());
    const double scale = std::max(max_abs(a), 1e-300);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
        if (std::abs(lu(piv, k)) <= pivot_tol * scale) return std::nullopt;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            std::swap(x[k], x[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu(i, k) / lu(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
            x[i] -= f * x[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = x[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= lu(k, j) * x[j];
        x[k] = s / lu(k, k);
    }
    return x;
}

std::optional<DenseMatrix> inverse(const DenseMatrix& a, double pivot_tol) {
    const std::size_t n = a.rows();
    DenseMatrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vector e(n, 0.0);
        e[j] = 1.0;
        auto col = solve_square(a, e, pivot_tol);
        if (!col) return std::nullopt;
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = (*col)[i];
    }
    return inv;
}

Vector least_squares(const DenseMatrix& a, std::span<const double> b, double tol) {
    if (b.size() != a.rows()) throw InputError("least_squares: length mismatch");
    Vector x(a.cols(), 0.0);
    if (a.empty()) return x;
    const auto pairs = singular_pairs(a);
    const double smax = pairs.front().sigma;
    if (smax <= tol) return x;
    for (const auto& p : pairs) {
        if (p.sigma <= tol * smax) continue;
        const double c = dot(p.left, b) / p.sigma;
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += c * p.right[j];
    }
    return x;
}

}  // namespace hoffman::linalg
