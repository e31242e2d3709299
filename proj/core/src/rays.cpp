#include "hoffman/rays.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "hoffman/error.hpp"

namespace hoffman::rays {

namespace {

class RowSet {
public:
    explicit RowSet(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    RowSet operator&(const RowSet& o) const {
        RowSet r = *this;
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= o.words_[k];
        return r;
    }
    bool superset_of(const RowSet& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if ((o.words_[k] & ~words_[k]) != 0) return false;
        return true;
    }

private:
    std::vector<std::uint64_t> words_;
};

struct Ray {
    Vector dir;
    RowSet zeros;
};

void normalize(Vector& v) {
    const double n = linalg::norm2(v);
    if (n > 0) for (double& x : v) x /= n;
}

constexpr double kZeroTol = 1e-10;

}  // namespace

std::vector<Vector> extreme_rays_pointed(const DenseMatrix& f_in) {
    const std::size_t d = f_in.cols();
    if (d == 0) return {};
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < f_in.rows(); ++i) {
        Vector r = f_in.row_vector(i);
        if (linalg::norm2(r) < 1e-12) continue;
        normalize(r);
        rows.push_back(std::move(r));
    }
    const std::size_t k = rows.size();

    // Initial simplicial cone from d independent rows chosen greedily.
    std::vector<int> chosen;
    std::vector<Vector> ortho;
    for (std::size_t i = 0; i < k && chosen.size() < d; ++i) {
        Vector v = rows[i];
        for (const auto& q : ortho) v = linalg::axpy(-linalg::dot(q, v), q, v);
        const double nv = linalg::norm2(v);
        if (nv < 1e-9) continue;
        for (double& x : v) x /= nv;
        ortho.push_back(std::move(v));
        chosen.push_back(static_cast<int>(i));
    }
    if (chosen.size() < d) throw InvariantError("extreme_rays_pointed: cone is not pointed");
    DenseMatrix basis_rows = DenseMatrix::from_rows([&] {
        std::vector<Vector> b;
        for (int i : chosen) b.push_back(rows[i]);
        return b;
    }());
    auto inv = linalg::inverse(basis_rows);
    if (!inv) throw InvariantError("extreme_rays_pointed: singular initial basis");

    std::vector<bool> processed(k, false);
    for (int i : chosen) processed[i] = true;
    std::vector<Ray> current;
    for (std::size_t j = 0; j < d; ++j) {
        Ray r{inv->column(j), RowSet(k)};
        normalize(r.dir);
        for (std::size_t t = 0; t < d; ++t)
            if (t != j) r.zeros.set(static_cast<std::size_t>(chosen[t]));
        current.push_back(std::move(r));
    }

    for (std::size_t row = 0; row < k; ++row) {
        if (processed[row]) continue;
        processed[row] = true;
        std::vector<double> s(current.size());
        for (std::size_t r = 0; r < current.size(); ++r) s[r] = linalg::dot(rows[row], current[r].dir);
        std::vector<std::size_t> pos, neg, zero;
        for (std::size_t r = 0; r < current.size(); ++r) {
            if (s[r] > kZeroTol) pos.push_back(r);
            else if (s[r] < -kZeroTol) neg.push_back(r);
            else zero.push_back(r);
        }
        if (neg.empty()) {
            for (std::size_t r : zero) current[r].zeros.set(row);
            continue;
        }
        std::vector<Ray> next;
        for (std::size_t r : pos) next.push_back(current[r]);
        for (std::size_t r : zero) {
            next.push_back(current[r]);
            next.back().zeros.set(row);
        }
        for (std::size_t p : pos) {
            for (std::size_t n : neg) {
                RowSet common = current[p].zeros & current[n].zeros;
                if (common.count() + 2 < d) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < current.size() && adjacent; ++r) {
                    if (r == p || r == n) continue;
                    if (current[r].zeros.superset_of(common)) adjacent = false;
                }
                if (!adjacent) continue;
                Ray nr{linalg::axpy(s[p], current[n].dir, linalg::scaled(-s[n], current[p].dir)), common};
                normalize(nr.dir);
                nr.zeros.set(row);
                next.push_back(std::move(nr));
            }
        }
        current = std::move(next);
    }

    std::vector<Vector> out;
    for (auto& r : current) {
        bool dup = false;
        for (const auto& o : out) {
            double diff = 0.0;
            for (std::size_t j = 0; j < d; ++j) diff = std::max(diff, std::abs(o[j] - r.dir[j]));
            if (diff < 1e-9) { dup = true; break; }
        }
        if (!dup) out.push_back(std::move(r.dir));
    }
    return out;
}

ConeGenerators cone_generators(const DenseMatrix& ineq, const DenseMatrix& eq, std::size_t dim) {
    ConeGenerators out;
    DenseMatrix space = eq.rows() > 0 ? linalg::kernel_basis(eq) : DenseMatrix::identity(dim);
    if (space.cols() == 0) {
        out.lineality = DenseMatrix(dim, 0);
        return out;
    }
    const DenseMatrix f = ineq.rows() > 0 ? ineq * space : DenseMatrix(0, space.cols());
    DenseMatrix lin_z = f.rows() > 0 ? linalg::kernel_basis(f) : DenseMatrix::identity(space.cols());
    out.lineality = lin_z.cols() > 0 ? space * lin_z : DenseMatrix(dim, 0);
    if (lin_z.cols() == space.cols()) return out;
    const DenseMatrix w = lin_z.cols() > 0 ? linalg::orthonormal_complement(lin_z)
                                           : DenseMatrix::identity(space.cols());
    const DenseMatrix to_u = space * w;
    for (const Vector& z : extreme_rays_pointed(f * w)) {
        Vector u = linalg::multiply(to_u, z);
        normalize(u);
        out.rays.push_back(std::move(u));
    }
    return out;
}

}  // namespace hoffman::rays
