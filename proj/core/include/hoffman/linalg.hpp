#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace hoffman {

using Vector = std::vector<double>;

/// Sorted list of zero-based coordinate indices.
using IndexSet = std::vector<int>;

namespace linalg {

inline constexpr double kDefaultTol = 1e-10;

/// Upper bound on any matrix dimension fed to the enumeration algorithms.
/// Everything downstream is exponential in the dimension, so the limit is
/// enforced eagerly with a ScaleError.
std::size_t desk_scale_limit();
void set_desk_scale_limit(std::size_t limit);
void require_desk_scale(std::string_view what, std::size_t dim);

/// Dense real matrix stored row-major.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols_if_empty = 0);
    static DenseMatrix from_columns(const std::vector<Vector>& cols, std::size_t rows_if_empty = 0);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    Vector row_vector(std::size_t i) const;
    Vector column(std::size_t j) const;
    const std::vector<double>& data() const noexcept { return data_; }

    DenseMatrix transpose() const;
    DenseMatrix select_columns(std::span<const int> cols) const;
    DenseMatrix select_rows(std::span<const int> rows) const;
    /// Returns this * diag(d).
    DenseMatrix scale_columns(std::span<const double> d) const;
    /// Returns diag(d) * this.
    DenseMatrix scale_rows(std::span<const double> d) const;

    bool all_finite() const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix vstack(const DenseMatrix& top, const DenseMatrix& bottom);
DenseMatrix hstack(const DenseMatrix& left, const DenseMatrix& right);

Vector multiply(const DenseMatrix& a, std::span<const double> x);
Vector multiply_transpose(const DenseMatrix& a, std::span<const double> y);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);
Vector axpy(double alpha, std::span<const double> x, std::span<const double> y);  // alpha*x + y
Vector scaled(double alpha, std::span<const double> x);

/// Frobenius-free max-abs entry.
double max_abs(const DenseMatrix& a);

struct SingularPair {
    double sigma = 0.0;
    Vector left;   ///< unit vector in R^rows
    Vector right;  ///< unit vector in R^cols
};

/// Thin SVD by one-sided Jacobi rotations, ordered by descending sigma.
/// Returns min(rows, cols) pairs; left vectors belonging to zero singular
/// values are completed to an orthonormal set.
std::vector<SingularPair> singular_pairs(const DenseMatrix& m);

double spectral_norm(const DenseMatrix& m);
double sigma_min(const DenseMatrix& m);

/// Number of singular values above tol * sigma_max (0 when sigma_max <= tol).
int rank_tol(const DenseMatrix& m, double tol = kDefaultTol);

/// Orthonormal columns spanning ker(m).
DenseMatrix kernel_basis(const DenseMatrix& m, double tol = kDefaultTol);

/// Orthonormal columns spanning the column space of m.
DenseMatrix range_basis(const DenseMatrix& m, double tol = kDefaultTol);

/// Columns completing the orthonormal columns of q to an orthonormal basis
/// of R^{q.rows()}.
DenseMatrix orthonormal_complement(const DenseMatrix& q);

/// Gram-Schmidt on the rows; throws RankError when m is rank deficient.
DenseMatrix orthonormalize_rows(const DenseMatrix& m, double tol = kDefaultTol);

/// LU with partial pivoting; empty optional when the matrix is singular.
std::optional<Vector> solve_square(const DenseMatrix& a, std::span<const double> b,
                                   double pivot_tol = 1e-12);
std::optional<DenseMatrix> inverse(const DenseMatrix& a, double pivot_tol = 1e-12);

/// Minimum-norm least-squares solution via the pseudo-inverse.
Vector least_squares(const DenseMatrix& a, std::span<const double> b, double tol = kDefaultTol);

/// Throws InputError if any entry is not finite.
void require_finite(const DenseMatrix& m, std::string_view what);

}  // namespace linalg

using linalg::DenseMatrix;

}  // namespace hoffman
