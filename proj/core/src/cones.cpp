#include "hoffman/cones.hpp"

#include <algorithm>
#include <cmath>

#include "hoffman/error.hpp"

namespace hoffman::cones {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using linalg::dot;
using linalg::norm2;

DenseMatrix rows_of(const std::vector<Vector>& rows, std::size_t dim) {
    return DenseMatrix::from_rows(rows, dim);
}

std::vector<Vector> columns_of(const DenseMatrix& m) {
    std::vector<Vector> out;
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
    return out;
}

Vector unit(std::size_t n, std::size_t i, double s = 1.0) {
    Vector e(n, 0.0);
    e[i] = s;
    return e;
}

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    IndexSet idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<int>(i);
    for (;;) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && static_cast<std::size_t>(idx[i - 1]) == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

constexpr double kMaxSubsets = 5e6;

void normalize(Vector& v) {
    const double n = norm2(v);
    if (n > 0) for (double& x : v) x /= n;
}

bool push_unique(std::vector<Vector>& set, Vector v, double tol = 1e-9) {
    for (const auto& w : set) {
        double diff = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) diff = std::max(diff, std::abs(w[i] - v[i]));
        if (diff <= tol) return false;
    }
    set.push_back(std::move(v));
    return true;
}

// Block-diagonal combination of linear descriptions.
lp::HPolytope stack(const std::vector<lp::HPolytope>& parts) {
    std::size_t n = 0, ni = 0, ne = 0;
    for (const auto& p : parts) {
        n += p.dim();
        ni += p.ineq_matrix.rows();
        ne += p.eq_matrix.rows();
    }
    lp::HPolytope out(n);
    out.ineq_matrix = DenseMatrix(ni, n);
    out.eq_matrix = DenseMatrix(ne, n);
    std::size_t off = 0, ri = 0, re = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.ineq_matrix.rows(); ++i, ++ri) {
            for (std::size_t j = 0; j < p.ineq_matrix.cols(); ++j) out.ineq_matrix(ri, off + j) = p.ineq_matrix(i, j);
            out.ineq_rhs.push_back(p.ineq_rhs[i]);
        }
        for (std::size_t i = 0; i < p.eq_matrix.rows(); ++i, ++re) {
            for (std::size_t j = 0; j < p.eq_matrix.cols(); ++j) out.eq_matrix(re, off + j) = p.eq_matrix(i, j);
            out.eq_rhs.push_back(p.eq_rhs[i]);
        }
        off += p.dim();
    }
    return out;
}

bool orthant_like_box(const Box& b) {
    for (std::size_t i = 0; i < b.lower.size(); ++i) {
        const bool lo_ok = b.lower[i] == 0.0 || b.lower[i] == -lp::kInf;
        const bool hi_ok = b.upper[i] == 0.0 || b.upper[i] == lp::kInf;
        if (!lo_ok || !hi_ok) return false;
    }
    return true;
}

Sign sign_of_bounds(double lo, double hi) {
    if (lo == 0.0 && hi == 0.0) return Sign::Zero;
    if (lo == 0.0) return Sign::Nonneg;
    if (hi == 0.0) return Sign::Nonpos;
    return Sign::Free;
}

DenseMatrix projector(const DenseMatrix& basis) {
    const std::size_t d = basis.rows();
    DenseMatrix p(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < basis.cols(); ++k) s += basis(i, k) * basis(j, k);
            p(i, j) = s;
        }
    return p;
}

}  // namespace

SignedOrthant SignedOrthant::from_sets(std::size_t n, const IndexSet& nonneg, const IndexSet& nonpos) {
    SignedOrthant o{std::vector<Sign>(n, Sign::Free)};
    for (int i : nonneg) {
        if (i < 0 || static_cast<std::size_t>(i) >= n) throw DomainError("signed orthant index out of range");
        o.signs[i] = Sign::Nonneg;
    }
    for (int j : nonpos) {
        if (j < 0 || static_cast<std::size_t>(j) >= n) throw DomainError("signed orthant index out of range");
        if (o.signs[j] == Sign::Nonneg) throw DomainError("signed orthant index sets overlap");
        o.signs[j] = Sign::Nonpos;
    }
    return o;
}

Subspace Subspace::spanned_by(const DenseMatrix& columns, std::size_t dim) {
    if (columns.cols() == 0) return Subspace{DenseMatrix(dim, 0)};
    if (columns.rows() != dim) throw InputError("subspace basis has wrong dimension");
    return Subspace{linalg::range_basis(columns)};
}

std::size_t dim(const ConeRepr& c) {
    return std::visit(overloaded{
                          [](const SignedOrthant& o) { return o.signs.size(); },
                          [](const Box& b) { return b.lower.size(); },
                          [](const Subspace& s) { return s.basis.rows(); },
                          [](const ZeroSet& z) { return z.dim; },
                          [](const FullSpace& f) { return f.dim; },
                          [](const HCone& h) { return h.dim; },
                          [](const VCone& v) { return v.dim; },
                          [](const Product& p) {
                              std::size_t n = 0;
                              for (const auto& part : p.parts) n += dim(part);
                              return n;
                          },
                      },
                      c.v);
}

std::string kind_name(const ConeRepr& c) {
    static const char* names[] = {"orthant", "box", "subspace", "zero", "full", "hcone", "vcone", "product"};
    return names[c.v.index()];
}

bool is_cone(const ConeRepr& c) {
    if (const auto* b = c.as<Box>()) return orthant_like_box(*b);
    if (const auto* p = c.as<Product>())
        return std::all_of(p->parts.begin(), p->parts.end(), [](const ConeRepr& q) { return is_cone(q); });
    return true;
}

std::optional<SignedOrthant> as_signed_orthant(const ConeRepr& c) {
    return std::visit(overloaded{
                          [](const SignedOrthant& o) -> std::optional<SignedOrthant> { return o; },
                          [](const Box& b) -> std::optional<SignedOrthant> {
                              if (!orthant_like_box(b)) return std::nullopt;
                              SignedOrthant o;
                              for (std::size_t i = 0; i < b.lower.size(); ++i)
                                  o.signs.push_back(sign_of_bounds(b.lower[i], b.upper[i]));
                              return o;
                          },
                          [](const ZeroSet& z) -> std::optional<SignedOrthant> {
                              return SignedOrthant{std::vector<Sign>(z.dim, Sign::Zero)};
                          },
                          [](const FullSpace& f) -> std::optional<SignedOrthant> {
                              return SignedOrthant{std::vector<Sign>(f.dim, Sign::Free)};
                          },
                          [](const Product& p) -> std::optional<SignedOrthant> {
                              SignedOrthant o;
                              for (const auto& part : p.parts) {
                                  auto q = as_signed_orthant(part);
                                  if (!q) return std::nullopt;
                                  o.signs.insert(o.signs.end(), q->signs.begin(), q->signs.end());
                              }
                              return o;
                          },
                          [](const auto&) -> std::optional<SignedOrthant> { return std::nullopt; },
                      },
                      c.v);
}

ConeRepr canonicalize(const ConeRepr& c) {
    if (c.as<Box>() || c.as<Product>()) {
        if (auto o = as_signed_orthant(c)) return *o;
    }
    if (const auto* s = c.as<Subspace>()) {
        if (s->basis.cols() == 0) return ZeroSet{s->basis.rows()};
        if (s->basis.cols() == s->basis.rows()) return FullSpace{s->basis.rows()};
    }
    return c;
}

ConeRepr dual_cone(const ConeRepr& c) {
    return std::visit(overloaded{
                          [](const SignedOrthant& o) -> ConeRepr {
                              SignedOrthant d = o;
                              for (auto& s : d.signs) {
                                  if (s == Sign::Zero) s = Sign::Free;
                                  else if (s == Sign::Free) s = Sign::Zero;
                              }
                              return d;
                          },
                          [&](const Box& b) -> ConeRepr {
                              if (!orthant_like_box(b))
                                  throw DomainError("dual_cone: box with finite nonzero bounds is not a cone");
                              return dual_cone(*as_signed_orthant(c));
                          },
                          [](const Subspace& s) -> ConeRepr {
                              const std::size_t d = s.basis.rows();
                              if (s.basis.cols() == 0) return FullSpace{d};
                              if (s.basis.cols() == d) return ZeroSet{d};
                              return Subspace{linalg::orthonormal_complement(s.basis)};
                          },
                          [](const ZeroSet& z) -> ConeRepr { return FullSpace{z.dim}; },
                          [](const FullSpace& f) -> ConeRepr { return ZeroSet{f.dim}; },
                          [](const HCone& h) -> ConeRepr {
                              VCone v{h.dim, {}};
                              for (std::size_t i = 0; i < h.ineq.rows(); ++i) v.generators.push_back(h.ineq.row_vector(i));
                              for (std::size_t i = 0; i < h.eq.rows(); ++i) {
                                  v.generators.push_back(h.eq.row_vector(i));
                                  v.generators.push_back(linalg::scaled(-1.0, h.eq.row(i)));
                              }
                              return v;
                          },
                          [](const VCone& v) -> ConeRepr {
                              return HCone{v.dim, rows_of(v.generators, v.dim), DenseMatrix(0, v.dim)};
                          },
                          [](const Product& p) -> ConeRepr {
                              Product d;
                              for (const auto& part : p.parts) d.parts.push_back(dual_cone(part));
                              return d;
                          },
                      },
                      c.v);
}

ConeRepr negate(const ConeRepr& c) {
    return std::visit(overloaded{
                          [](const SignedOrthant& o) -> ConeRepr {
                              SignedOrthant d = o;
                              for (auto& s : d.signs) {
                                  if (s == Sign::Nonneg) s = Sign::Nonpos;
                                  else if (s == Sign::Nonpos) s = Sign::Nonneg;
                              }
                              return d;
                          },
                          [](const Box& b) -> ConeRepr {
                              Box d;
                              for (std::size_t i = 0; i < b.lower.size(); ++i) {
                                  d.lower.push_back(b.upper[i] == 0.0 ? 0.0 : -b.upper[i]);
                                  d.upper.push_back(b.lower[i] == 0.0 ? 0.0 : -b.lower[i]);
                              }
                              return d;
                          },
                          [](const HCone& h) -> ConeRepr {
                              HCone d = h;
                              for (std::size_t i = 0; i < d.ineq.rows(); ++i)
                                  for (double& x : d.ineq.row(i)) x = -x;
                              return d;
                          },
                          [](const VCone& v) -> ConeRepr {
                              VCone d = v;
                              for (auto& g : d.generators)
                                  for (double& x : g) x = -x;
                              return d;
                          },
                          [](const Product& p) -> ConeRepr {
                              Product d;
                              for (const auto& part : p.parts) d.parts.push_back(negate(part));
                              return d;
                          },
                          [&](const auto&) -> ConeRepr { return c; },
                      },
                      c.v);
}

lp::HPolytope describe(const ConeRepr& c) {
    return std::visit(overloaded{
                          [](const SignedOrthant& o) {
                              const std::size_t n = o.signs.size();
                              lp::HPolytope p(n);
                              for (std::size_t i = 0; i < n; ++i) {
                                  switch (o.signs[i]) {
                                      case Sign::Nonneg: p.add_ineq(unit(n, i, -1.0), 0.0); break;
                                      case Sign::Nonpos: p.add_ineq(unit(n, i, 1.0), 0.0); break;
                                      case Sign::Zero: p.add_eq(unit(n, i), 0.0); break;
                                      case Sign::Free: break;
                                  }
                              }
                              return p;
                          },
                          [](const Box& b) {
                              const std::size_t n = b.lower.size();
                              lp::HPolytope p(n);
                              for (std::size_t i = 0; i < n; ++i) {
                                  if (b.lower[i] == b.upper[i]) {
                                      p.add_eq(unit(n, i), b.lower[i]);
                                      continue;
                                  }
                                  if (std::isfinite(b.upper[i])) p.add_ineq(unit(n, i, 1.0), b.upper[i]);
                                  if (std::isfinite(b.lower[i])) p.add_ineq(unit(n, i, -1.0), -b.lower[i]);
                              }
                              return p;
                          },
                          [](const Subspace& s) {
                              const std::size_t n = s.basis.rows();
                              lp::HPolytope p(n);
                              const DenseMatrix comp = linalg::orthonormal_complement(s.basis);
                              p.eq_matrix = comp.cols() > 0 ? comp.transpose() : DenseMatrix(0, n);
                              p.eq_rhs.assign(p.eq_matrix.rows(), 0.0);
                              return p;
                          },
                          [](const ZeroSet& z) {
                              lp::HPolytope p(z.dim);
                              p.eq_matrix = DenseMatrix::identity(z.dim);
                              p.eq_rhs.assign(z.dim, 0.0);
                              return p;
                          },
                          [](const FullSpace& f) { return lp::HPolytope(f.dim); },
                          [](const HCone& h) {
                              lp::HPolytope p(h.dim);
                              if (h.ineq.rows() > 0) {
                                  p.ineq_matrix = h.ineq;
                                  for (std::size_t i = 0; i < h.ineq.rows(); ++i)
                                      for (double& x : p.ineq_matrix.row(i)) x = -x;
                              }
                              p.ineq_rhs.assign(h.ineq.rows(), 0.0);
                              if (h.eq.rows() > 0) p.eq_matrix = h.eq;
                              p.eq_rhs.assign(h.eq.rows(), 0.0);
                              return p;
                          },
                          [](const VCone& v) { return describe(v_to_h(v)); },
                          [](const Product& p) {
                              std::vector<lp::HPolytope> parts;
                              for (const auto& part : p.parts) parts.push_back(describe(part));
                              return stack(parts);
                          },
                      },
                      c.v);
}

bool contains(const ConeRepr& c, std::span<const double> x, double tol) {
    if (x.size() != dim(c)) throw InputError("contains: dimension mismatch");
    if (const auto* v = c.as<VCone>()) {
        // x = G lambda with lambda >= 0, allowing tol slack per coordinate.
        const std::size_t k = v->generators.size();
        lp::LinearProgram prog(k);
        prog.bounds.assign(k, lp::Bound{0.0, lp::kInf});
        DenseMatrix g = DenseMatrix::from_columns(v->generators, v->dim);
        if (k == 0) return linalg::norm_inf(x) <= tol;
        prog.ineq_matrix = DenseMatrix(2 * v->dim, k);
        for (std::size_t i = 0; i < v->dim; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                prog.ineq_matrix(2 * i, j) = g(i, j);
                prog.ineq_matrix(2 * i + 1, j) = -g(i, j);
            }
            prog.ineq_rhs.push_back(x[i] + tol);
            prog.ineq_rhs.push_back(-x[i] + tol);
        }
        return lp::solve_lp(prog).status == lp::LpStatus::optimal;
    }
    if (const auto* s = c.as<Subspace>()) {
        Vector r(x.begin(), x.end());
        for (std::size_t k = 0; k < s->basis.cols(); ++k) {
            const Vector q = s->basis.column(k);
            r = linalg::axpy(-dot(q, x), q, r);
        }
        return linalg::norm_inf(r) <= tol;
    }
    return describe(c).contains(x, tol);
}

bool in_relative_interior(const ConeRepr& c, std::span<const double> x, double tol) {
    if (x.size() != dim(c)) throw InputError("in_relative_interior: dimension mismatch");
    return std::visit(
        overloaded{
            [&](const SignedOrthant& o) {
                for (std::size_t i = 0; i < x.size(); ++i) {
                    switch (o.signs[i]) {
                        case Sign::Nonneg: if (!(x[i] > tol)) return false; break;
                        case Sign::Nonpos: if (!(x[i] < -tol)) return false; break;
                        case Sign::Zero: if (std::abs(x[i]) > tol) return false; break;
                        case Sign::Free: break;
                    }
                }
                return true;
            },
            [&](const Box& b) {
                for (std::size_t i = 0; i < x.size(); ++i) {
                    if (b.lower[i] == b.upper[i]) {
                        if (std::abs(x[i] - b.lower[i]) > tol) return false;
                        continue;
                    }
                    if (!(x[i] > b.lower[i] + tol) || !(x[i] < b.upper[i] - tol)) return false;
                }
                return true;
            },
            [&](const Subspace&) { return contains(c, x, tol); },
            [&](const ZeroSet&) { return linalg::norm_inf(x) <= tol; },
            [&](const FullSpace&) { return true; },
            [&](const HCone& h) {
                if (!contains(c, x, tol)) return false;
                // Rows that vanish on the whole cone are implicit equalities.
                const lp::HPolytope p = describe(c);
                for (std::size_t i = 0; i < h.ineq.rows(); ++i) {
                    if (dot(h.ineq.row(i), x) > tol) continue;
                    if (lp::strict_feasibility(p, IndexSet{static_cast<int>(i)}).feasible) return false;
                }
                return true;
            },
            [&](const VCone& v) { return in_relative_interior(v_to_h(v), x, tol); },
            [&](const Product& p) {
                std::size_t off = 0;
                for (const auto& part : p.parts) {
                    const std::size_t n = dim(part);
                    if (!in_relative_interior(part, x.subspan(off, n), tol)) return false;
                    off += n;
                }
                return true;
            },
        },
        c.v);
}

Generators generators(const ConeRepr& c) {
    Generators g;
    const std::size_t n = dim(c);
    std::visit(overloaded{
                   [&](const SignedOrthant& o) {
                       for (std::size_t i = 0; i < n; ++i) {
                           switch (o.signs[i]) {
                               case Sign::Nonneg: g.rays.push_back(unit(n, i)); break;
                               case Sign::Nonpos: g.rays.push_back(unit(n, i, -1.0)); break;
                               case Sign::Free: g.lineality.push_back(unit(n, i)); break;
                               case Sign::Zero: break;
                           }
                       }
                   },
                   [&](const Box& b) {
                       if (!orthant_like_box(b)) throw DomainError("generators: box is not a cone");
                       g = generators(*as_signed_orthant(c));
                   },
                   [&](const Subspace& s) { g.lineality = columns_of(s.basis); },
                   [&](const ZeroSet&) {},
                   [&](const FullSpace&) {
                       for (std::size_t i = 0; i < n; ++i) g.lineality.push_back(unit(n, i));
                   },
                   [&](const HCone& h) {
                       const VCone v = h_to_v(h);
                       // h_to_v lists lineality as +/- pairs; separate them again.
                       std::vector<Vector> pool = v.generators;
                       std::vector<bool> used(pool.size(), false);
                       for (std::size_t i = 0; i < pool.size(); ++i) {
                           if (used[i]) continue;
                           bool paired = false;
                           for (std::size_t j = i + 1; j < pool.size() && !paired; ++j) {
                               if (used[j]) continue;
                               double diff = 0.0;
                               for (std::size_t k = 0; k < n; ++k) diff = std::max(diff, std::abs(pool[i][k] + pool[j][k]));
                               if (diff < 1e-9) {
                                   used[j] = true;
                                   paired = true;
                               }
                           }
                           used[i] = true;
                           (paired ? g.lineality : g.rays).push_back(pool[i]);
                       }
                   },
                   [&](const VCone& v) { g.rays = v.generators; },
                   [&](const Product& p) {
                       std::size_t off = 0;
                       for (const auto& part : p.parts) {
                           const std::size_t k = dim(part);
                           Generators sub = generators(part);
                           auto lift = [&](const Vector& x) {
                               Vector y(n, 0.0);
                               std::copy(x.begin(), x.end(), y.begin() + static_cast<long>(off));
                               return y;
                           };
                           for (const auto& r : sub.rays) g.rays.push_back(lift(r));
                           for (const auto& l : sub.lineality) g.lineality.push_back(lift(l));
                           off += k;
                       }
                   },
               },
               c.v);
    return g;
}

HCone v_to_h(const VCone& c) {
    const std::size_t d = c.dim;
    linalg::require_desk_scale("v_to_h", d);
    HCone out{d, DenseMatrix(0, d), DenseMatrix(0, d)};
    std::vector<Vector> gens;
    for (const auto& g : c.generators) {
        if (g.size() != d) throw InputError("v_to_h: generator has wrong dimension");
        if (norm2(g) > 1e-12) gens.push_back(g);
    }
    const DenseMatrix span = gens.empty() ? DenseMatrix(d, 0)
                                          : linalg::range_basis(DenseMatrix::from_columns(gens, d));
    const std::size_t r = span.cols();
    const DenseMatrix comp = linalg::orthonormal_complement(span);
    if (comp.cols() > 0) out.eq = comp.transpose();
    if (r == 0) return out;

    // Generator coordinates inside the span, normalized.
    std::vector<Vector> z;
    for (const auto& g : gens) {
        Vector zi = linalg::multiply_transpose(span, g);
        normalize(zi);
        z.push_back(std::move(zi));
    }
    if (binomial(z.size(), r - 1) > kMaxSubsets) throw ScaleError("v_to_h: too many candidate facets");

    std::vector<Vector> facets;
    auto test_normal = [&](Vector a) {
        normalize(a);
        bool all_ge = true, all_le = true;
        for (const auto& zi : z) {
            const double s = dot(a, zi);
            if (s < -1e-9) all_ge = false;
            if (s > 1e-9) all_le = false;
        }
        if (all_ge && !all_le) push_unique(facets, a);
        if (all_le && !all_ge) push_unique(facets, linalg::scaled(-1.0, a));
    };
    if (r == 1) {
        test_normal(Vector{1.0});
    } else {
        for_each_subset(z.size(), r - 1, [&](const IndexSet& sub) {
            std::vector<Vector> rows;
            for (int i : sub) rows.push_back(z[i]);
            const DenseMatrix m = rows_of(rows, r);
            if (linalg::rank_tol(m, 1e-9) != static_cast<int>(r - 1)) return;
            const DenseMatrix ker = linalg::kernel_basis(m, 1e-9);
            if (ker.cols() != 1) return;
            test_normal(ker.column(0));
        });
    }
    std::vector<Vector> rows;
    for (const auto& a : facets) {
        Vector row = linalg::multiply(span, a);
        normalize(row);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    out.ineq = rows_of(rows, d);
    return out;
}

VCone h_to_v(const HCone& c) {
    const std::size_t d = c.dim;
    linalg::require_desk_scale("h_to_v", d);
    VCone out{d, {}};
    const DenseMatrix space = c.eq.rows() > 0 ? linalg::kernel_basis(c.eq) : DenseMatrix::identity(d);
    if (space.cols() == 0) return out;
    const DenseMatrix f = c.ineq.rows() > 0 ? c.ineq * space : DenseMatrix(0, space.cols());
    const DenseMatrix lin = f.rows() > 0 ? linalg::kernel_basis(f) : DenseMatrix::identity(space.cols());
    for (std::size_t j = 0; j < lin.cols(); ++j) {
        Vector l = linalg::multiply(space, lin.column(j));
        normalize(l);
        out.generators.push_back(l);
        out.generators.push_back(linalg::scaled(-1.0, l));
    }
    if (lin.cols() == space.cols()) return out;
    const DenseMatrix w = lin.cols() > 0 ? linalg::orthonormal_complement(lin) : DenseMatrix::identity(space.cols());
    const DenseMatrix fw = f * w;
    const std::size_t p = w.cols();
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < fw.rows(); ++i) {
        Vector r = fw.row_vector(i);
        if (norm2(r) < 1e-12) continue;
        normalize(r);
        rows.push_back(std::move(r));
    }
    if (binomial(rows.size(), p - 1) > kMaxSubsets) throw ScaleError("h_to_v: too many candidate rays");
    const DenseMatrix to_x = space * w;
    std::vector<Vector> rays;
    auto test_dir = [&](Vector z) {
        normalize(z);
        for (double s : {1.0, -1.0}) {
            bool ok = true;
            for (const auto& r : rows)
                if (s * dot(r, z) < -1e-9) {
                    ok = false;
                    break;
                }
            if (ok) push_unique(rays, linalg::scaled(s, z));
        }
    };
    if (p == 1) {
        test_dir(Vector{1.0});
    } else {
        for_each_subset(rows.size(), p - 1, [&](const IndexSet& sub) {
            std::vector<Vector> active;
            for (int i : sub) active.push_back(rows[i]);
            const DenseMatrix m = rows_of(active, p);
            if (linalg::rank_tol(m, 1e-9) != static_cast<int>(p - 1)) return;
            const DenseMatrix ker = linalg::kernel_basis(m, 1e-9);
            if (ker.cols() != 1) return;
            test_dir(ker.column(0));
        });
    }
    for (const auto& z : rays) {
        Vector x = linalg::multiply(to_x, z);
        normalize(x);
        out.generators.push_back(std::move(x));
    }
    return out;
}

ConeRepr image_plus_subspace(const DenseMatrix& a, const ConeRepr& orthant, const ConeRepr& l) {
    auto o = as_signed_orthant(orthant);
    if (!o) throw UnsupportedStructureError("image_plus_subspace: expected an orthant, got " + kind_name(orthant));
    if (!l.as<Subspace>() && !l.as<ZeroSet>() && !l.as<FullSpace>())
        throw UnsupportedStructureError("image_plus_subspace: expected a subspace, got " + kind_name(l));
    return image_minus_cone(a, *o, l);
}

ConeRepr image_minus_cone(const DenseMatrix& a, const ConeRepr& r, const ConeRepr& s) {
    if (dim(r) != a.cols() || dim(s) != a.rows()) throw InputError("image_minus_cone: dimension mismatch");
    const std::size_t m = a.rows();
    VCone v{m, {}};
    const Generators gr = generators(r);
    const Generators gs = generators(s);
    for (const auto& x : gr.rays) v.generators.push_back(linalg::multiply(a, x));
    for (const auto& x : gr.lineality) {
        Vector ax = linalg::multiply(a, x);
        v.generators.push_back(ax);
        v.generators.push_back(linalg::scaled(-1.0, ax));
    }
    for (const auto& x : gs.rays) v.generators.push_back(linalg::scaled(-1.0, x));
    for (const auto& x : gs.lineality) {
        v.generators.push_back(x);
        v.generators.push_back(linalg::scaled(-1.0, x));
    }
    HCone h = v_to_h(v);
    if (h.ineq.rows() == 0 && h.eq.rows() == 0) return FullSpace{m};
    if (h.ineq.rows() == 0) {
        if (h.eq.rows() == m) return ZeroSet{m};
        return Subspace{linalg::orthonormal_complement(h.eq.transpose())};
    }
    return h;
}

bool equivalent(const ConeRepr& a, const ConeRepr& b, double tol) {
    if (dim(a) != dim(b)) return false;
    auto inside = [&](const ConeRepr& x, const ConeRepr& y) {
        const Generators g = generators(x);
        for (const auto& r : g.rays)
            if (!contains(y, r, tol)) return false;
        for (const auto& l : g.lineality) {
            if (!contains(y, l, tol)) return false;
            if (!contains(y, linalg::scaled(-1.0, l), tol)) return false;
        }
        return true;
    };
    return inside(a, b) && inside(b, a);
}

bool structurally_equal(const ConeRepr& a, const ConeRepr& b, double tol) {
    const ConeRepr ca = canonicalize(a);
    const ConeRepr cb = canonicalize(b);
    if (ca.v.index() != cb.v.index() || dim(ca) != dim(cb)) return false;
    if (const auto* s = ca.as<Subspace>()) {
        const auto* t = cb.as<Subspace>();
        if (s->basis.cols() != t->basis.cols()) return false;
        return linalg::max_abs(projector(s->basis) - projector(t->basis)) <= tol;
    }
    if (const auto* o = ca.as<SignedOrthant>()) return *o == *cb.as<SignedOrthant>();
    if (const auto* x = ca.as<Box>()) {
        const auto* y = cb.as<Box>();
        return x->lower == y->lower && x->upper == y->upper;
    }
    if (ca.as<ZeroSet>() || ca.as<FullSpace>()) return true;
    return equivalent(ca, cb, tol);
}

Vector project(const ConeRepr& c, std::span<const double> x) {
    if (x.size() != dim(c)) throw InputError("project: dimension mismatch");
    if (auto o = as_signed_orthant(c)) {
        Vector p(x.begin(), x.end());
        for (std::size_t i = 0; i < p.size(); ++i) {
            switch (o->signs[i]) {
                case Sign::Nonneg: p[i] = std::max(p[i], 0.0); break;
                case Sign::Nonpos: p[i] = std::min(p[i], 0.0); break;
                case Sign::Zero: p[i] = 0.0; break;
                case Sign::Free: break;
            }
        }
        return p;
    }
    if (const auto* b = c.as<Box>()) {
        Vector p(x.begin(), x.end());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], b->lower[i], b->upper[i]);
        return p;
    }
    if (const auto* s = c.as<Subspace>()) {
        Vector p(x.size(), 0.0);
        for (std::size_t k = 0; k < s->basis.cols(); ++k) {
            const Vector q = s->basis.column(k);
            p = linalg::axpy(dot(q, x), q, p);
        }
        return p;
    }
    if (const auto* pr = c.as<Product>()) {
        Vector p;
        std::size_t off = 0;
        for (const auto& part : pr->parts) {
            const std::size_t n = dim(part);
            const Vector q = project(part, x.subspan(off, n));
            p.insert(p.end(), q.begin(), q.end());
            off += n;
        }
        return p;
    }
    // Generic: the point of the set closest to x, i.e. x - argmin ||d|| over x - d in c.
    lp::HPolytope set = describe(c);
    lp::HPolytope shifted(x.size());
    shifted.ineq_matrix = set.ineq_matrix;
    shifted.eq_matrix = set.eq_matrix;
    if (set.ineq_matrix.rows() > 0) {
        for (std::size_t i = 0; i < shifted.ineq_matrix.rows(); ++i)
            for (double& v : shifted.ineq_matrix.row(i)) v = -v;
        const Vector gx = linalg::multiply(set.ineq_matrix, x);
        for (std::size_t i = 0; i < gx.size(); ++i) shifted.ineq_rhs.push_back(set.ineq_rhs[i] - gx[i]);
    }
    if (set.eq_matrix.rows() > 0) {
        for (std::size_t i = 0; i < shifted.eq_matrix.rows(); ++i)
            for (double& v : shifted.eq_matrix.row(i)) v = -v;
        const Vector ex = linalg::multiply(set.eq_matrix, x);
        for (std::size_t i = 0; i < ex.size(); ++i) shifted.eq_rhs.push_back(set.eq_rhs[i] - ex[i]);
    }
    const auto r = lp::min_l2_point(shifted);
    if (r.status != lp::LpStatus::optimal) throw InfeasibleError("project: empty set");
    return linalg::axpy(-1.0, r.point, x);
}

double distance(const ConeRepr& c, std::span<const double> x, NormTag norm_tag) {
    if (x.size() != dim(c)) throw InputError("distance: dimension mismatch");
    const bool separable = as_signed_orthant(c) || c.as<Box>();
    if (separable || (c.as<Subspace>() && norm_tag == NormTag::L2)) {
        // Coordinatewise clipping is optimal for every lp norm on orthants and boxes.
        const Vector p = project(c, x);
        return norm(norm_tag, linalg::axpy(-1.0, p, x));
    }
    lp::HPolytope set = describe(c);
    lp::HPolytope shifted(x.size());
    shifted.ineq_matrix = set.ineq_matrix;
    shifted.eq_matrix = set.eq_matrix;
    for (std::size_t i = 0; i < set.ineq_matrix.rows(); ++i) {
        for (double& v : shifted.ineq_matrix.row(i)) v = -v;
        shifted.ineq_rhs.push_back(set.ineq_rhs[i] - dot(set.ineq_matrix.row(i), x));
    }
    for (std::size_t i = 0; i < set.eq_matrix.rows(); ++i) {
        for (double& v : shifted.eq_matrix.row(i)) v = -v;
        shifted.eq_rhs.push_back(set.eq_rhs[i] - dot(set.eq_matrix.row(i), x));
    }
    const auto r = lp::min_norm_any(norm_tag, shifted);
    if (r.status != lp::LpStatus::optimal) throw InfeasibleError("distance: empty set");
    return r.value;
}

}  // namespace hoffman::cones
