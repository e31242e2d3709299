#include <algorithm>
#include <cmath>
#include <random>

#include "hoffman/constants.hpp"
#include "hoffman/error.hpp"
#include "internal.hpp"
#include "parallel.hpp"

namespace hoffman {

using cones::ConeRepr;
using cones::Sign;
using mapping::SolutionMap;
using mapping::TangentIndex;

namespace {

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

std::vector<IndexSet> subsets_of_size(std::size_t n, std::size_t k) {
    std::vector<IndexSet> out;
    for_each_subset(n, k, [&](const IndexSet& s) { out.push_back(s); });
    return out;
}

bool is_zero_like(const ConeRepr& c) {
    if (c.as<cones::ZeroSet>()) return true;
    if (auto o = cones::as_signed_orthant(c))
        return std::all_of(o->signs.begin(), o->signs.end(), [](Sign s) { return s == Sign::Zero; });
    return false;
}

bool is_full_like(const ConeRepr& c) {
    if (c.as<cones::FullSpace>()) return true;
    if (auto o = cones::as_signed_orthant(c))
        return std::all_of(o->signs.begin(), o->signs.end(), [](Sign s) { return s == Sign::Free; });
    return false;
}

// Orthonormal basis of the S-subspace, or an empty m x 0 matrix for {0}.
DenseMatrix s_subspace_basis(const SolutionMap& m) {
    if (const auto* s = m.s().as<cones::Subspace>()) return s->basis;
    return DenseMatrix(m.m(), 0);
}

// R as an isometric parametrization x = Q z (identity for R^n).
DenseMatrix r_parametrization(const SolutionMap& m) {
    if (const auto* s = m.r().as<cones::Subspace>()) return s->basis;
    return DenseMatrix::identity(m.n());
}

HoffmanReport pick_best(std::vector<HoffmanReport>& parts) {
    std::vector<double> values;
    for (const auto& p : parts) values.push_back(p.infinite ? lp::kInf : p.value);
    const std::size_t best = detail::argmax_first(values);
    return std::move(parts[best]);
}

}  // namespace

// ---- geometric inradius route ------------------------------------------------

HoffmanReport geometric_tangent_norm(const SolutionMap& tm) {
    const auto orth = cones::as_signed_orthant(tm.r());
    if (!orth || tm.r().as<cones::Box>()) throw UnsupportedStructureError("geometric route needs an orthant R");
    if (!is_zero_like(tm.s()) && !tm.s().as<cones::Subspace>())
        throw UnsupportedStructureError("geometric route needs S = {0} or a subspace");
    if (tm.norms().b != NormTag::L2 || tm.norms().x != NormTag::L1)
        throw UnsupportedNormError("geometric route needs an l2 b-norm and an l1 x-norm");

    HoffmanReport rep;
    rep.method = Method::geometric_inradius;
    rep.attaining_index = detail::full_index(tm);
    if (!mapping::primal_slater(tm).holds) {
        rep.infinite = true;
        rep.value = lp::kInf;
        rep.diagnostic = "origin is not interior to the image of the l1 ball (Slater fails on this tangent)";
        return rep;
    }
    const std::size_t M = tm.m();
    const DenseMatrix l = s_subspace_basis(tm);
    auto project_out = [&](Vector p) {
        for (std::size_t k = 0; k < l.cols(); ++k) {
            const Vector q = l.column(k);
            p = linalg::axpy(-linalg::dot(q, p), q, p);
        }
        return p;
    };
    std::vector<Vector> points;
    for (std::size_t i = 0; i < tm.n(); ++i) {
        const Vector col = project_out(tm.a().column(i));
        switch (orth->signs[i]) {
            case Sign::Nonneg: points.push_back(col); break;
            case Sign::Nonpos: points.push_back(linalg::scaled(-1.0, col)); break;
            case Sign::Free:
                points.push_back(col);
                points.push_back(linalg::scaled(-1.0, col));
                break;
            case Sign::Zero: break;
        }
    }
    if (points.empty()) return rep;
    const DenseMatrix q = linalg::range_basis(DenseMatrix::from_columns(points, M));
    const std::size_t r = q.cols();
    if (r == 0) return rep;
    std::vector<Vector> z;
    for (const auto& p : points) {
        Vector zi = linalg::multiply_transpose(q, p);
        bool dup = false;
        for (const auto& w : z) {
            double d = 0.0;
            for (std::size_t j = 0; j < r; ++j) d = std::max(d, std::abs(w[j] - zi[j]));
            if (d < 1e-12) dup = true;
        }
        if (!dup) z.push_back(std::move(zi));
    }
    // Facets {a . z <= 1} through r affinely independent points.
    double best = -1.0;
    Vector best_a;
    const Vector ones(r, 1.0);
    for_each_subset(z.size(), r, [&](const IndexSet& sub) {
        std::vector<Vector> rows;
        for (int i : sub) rows.push_back(z[i]);
        const auto a = linalg::solve_square(DenseMatrix::from_rows(rows, r), ones);
        if (!a) return;
        for (const auto& zi : z)
            if (linalg::dot(*a, zi) > 1.0 + 1e-9) return;
        const double na = linalg::norm2(*a);
        if (na > best * (1 + 1e-12)) {
            best = na;
            best_a = *a;
        }
    });
    if (best < 0) throw InvariantError("geometric route: no facet found for a full-dimensional polytope");
    rep.value = best;
    rep.direction_u = linalg::multiply(q, linalg::scaled(1.0 / best, best_a));
    return rep;
}

namespace detail {

bool geometric_applicable(const SolutionMap& m) {
    if (m.norms().b != NormTag::L2 || m.norms().x != NormTag::L1) return false;
    if (m.r().as<cones::Box>() || !cones::as_signed_orthant(m.r())) return false;
    return is_zero_like(m.s()) || m.s().as<cones::Subspace>();
}

HoffmanReport geometric_route(const SolutionMap& m, const ComputeOptions& opts) {
    if (!geometric_applicable(m))
        throw UnsupportedStructureError("geometric route needs b l2, x l1, an orthant R and S = {0} or a subspace");
    if (mapping::primal_slater(m).holds) return geometric_tangent_norm(m);
    const auto sets = mapping::tangent_slater_sets(m);
    std::vector<HoffmanReport> parts(sets.size());
    parallel_for(sets.size(), opts.threads, [&](std::size_t i) {
        parts[i] = geometric_tangent_norm(mapping::restrict_to_tangent(m, sets[i]));
        parts[i].attaining_index = sets[i];
    });
    return pick_best(parts);
}

}  // namespace detail

HoffmanReport hoffman_PA_geometric(const DenseMatrix& a, const ComputeOptions& opts) {
    const SolutionMap m(a, cones::SignedOrthant::nonneg(a.cols()), cones::ZeroSet{a.rows()},
                        {NormTag::L2, NormTag::L1});
    return hoffman_constant(m, opts, Route::geometric);
}

// ---- cap maximization (Fact-2 route) ----------------------------------------

CapMax max_norm_over_cap(const DenseMatrix& b, NormTag p) {
    if (p == NormTag::LInf) throw UnsupportedNormError("max_norm_over_cap supports p = l1 or l2");
    const std::size_t k = b.cols();
    if (k == 0) return {};
    if (linalg::rank_tol(b) != static_cast<int>(k)) throw DomainError("max_norm_over_cap: B is rank deficient");
    linalg::require_desk_scale("max_norm_over_cap", k);
    CapMax best;
    auto offer = [&](double value, const IndexSet& cols, const Vector& xk) {
        if (value > best.value * (1 + 1e-12)) {
            best.value = value;
            best.x.assign(k, 0.0);
            for (std::size_t i = 0; i < cols.size(); ++i) best.x[cols[i]] = std::max(xk[i], 0.0);
        }
    };
    for (std::size_t size = k; size >= 1; --size) {
        for_each_subset(k, size, [&](const IndexSet& cols) {
            const DenseMatrix bk = b.select_columns(cols);
            if (p == NormTag::L1) {
                DenseMatrix g = bk.transpose() * bk;
                const auto z = linalg::solve_square(g, Vector(size, 1.0));
                if (!z) return;
                if (*std::min_element(z->begin(), z->end()) < -1e-10) return;
                double s = 0.0;
                for (double v : *z) s += v;
                if (s <= 0) return;
                const double val = std::sqrt(s);
                offer(val, cols, linalg::scaled(1.0 / val, *z));
                return;
            }
            const auto pairs = linalg::singular_pairs(bk);
            const double smax = pairs.front().sigma;
            std::size_t i = 0;
            while (i < pairs.size()) {
                std::size_t j = i + 1;
                while (j < pairs.size() && pairs[i].sigma - pairs[j].sigma < 1e-8 * smax) ++j;
                const double sigma = pairs[j - 1].sigma;
                bool found = false;
                for (std::size_t t = i; t < j && !found; ++t) {
                    const Vector& w = pairs[t].right;
                    const double lo = *std::min_element(w.begin(), w.end());
                    const double hi = *std::max_element(w.begin(), w.end());
                    if (lo >= -1e-10 || hi <= 1e-10) {
                        Vector x(w.size());
                        for (std::size_t e = 0; e < w.size(); ++e) x[e] = std::abs(w[e]) / pairs[t].sigma;
                        offer(1.0 / pairs[t].sigma, cols, x);
                        found = true;
                    }
                }
                if (!found && j - i > 1) {
                    // Repeated singular value: look for a nonnegative vector in its right singular subspace.
                    const std::size_t dim = j - i;
                    lp::LinearProgram prog(dim);
                    prog.ineq_matrix = DenseMatrix(size, dim);
                    prog.ineq_rhs.assign(size, 0.0);
                    prog.eq_matrix = DenseMatrix(1, dim);
                    for (std::size_t e = 0; e < size; ++e)
                        for (std::size_t t = 0; t < dim; ++t) {
                            prog.ineq_matrix(e, t) = -pairs[i + t].right[e];
                            prog.eq_matrix(0, t) += pairs[i + t].right[e];
                        }
                    prog.eq_rhs = {1.0};
                    const auto r = lp::solve_lp(prog);
                    if (r.status == lp::LpStatus::optimal) {
                        Vector x(size, 0.0);
                        for (std::size_t t = 0; t < dim; ++t)
                            x = linalg::axpy(r.point[t], pairs[i + t].right, x);
                        const double nx = linalg::norm2(x);
                        for (double& v : x) v = std::max(v, 0.0) / (nx * sigma);
                        offer(1.0 / sigma, cols, x);
                    }
                }
                i = j;
            }
        });
    }
    return best;
}

HoffmanReport hoffman_PA_star(const DenseMatrix& a, NormTag p, const ComputeOptions& opts) {
    const std::size_t m = a.rows(), n = a.cols();
    linalg::require_finite(a, "hoffman_PA_star");
    linalg::require_desk_scale("hoffman_PA_star", std::max(m, n));
    if (m == 0) return {};
    const auto bases = subsets_of_size(n, m);
    std::vector<CapMax> caps(bases.size());
    std::vector<char> usable(bases.size(), 0);
    detail::parallel_for(bases.size(), opts.threads, [&](std::size_t i) {
        const DenseMatrix ai = a.select_columns(bases[i]);
        if (linalg::rank_tol(ai) != static_cast<int>(m)) return;
        usable[i] = 1;
        caps[i] = max_norm_over_cap(ai, p);
    });
    std::vector<double> values(bases.size(), -1.0);
    for (std::size_t i = 0; i < bases.size(); ++i)
        if (usable[i]) values[i] = caps[i].value;
    if (std::none_of(usable.begin(), usable.end(), [](char c) { return c != 0; }))
        throw RankError("hoffman_PA_star: A has no nonsingular m-column basis");
    const std::size_t best = detail::argmax_first(values);
    HoffmanReport rep;
    rep.method = Method::cap_maximization;
    rep.value = caps[best].value;
    rep.basis = bases[best];
    rep.tol = opts.tol;
    // Direction c in R^n attaining the tangent norm on T = {(A^T y - c)_I <= 0}.
    const Vector& lam = caps[best].x;
    rep.direction_u.assign(n, 0.0);
    const double lmax = lam.empty() ? 0.0 : *std::max_element(lam.begin(), lam.end());
    const double l2 = linalg::norm2(lam);
    for (std::size_t t = 0; t < m; ++t) {
        const int j = bases[best][t];
        if (p == NormTag::L1) rep.direction_u[j] = lam[t] > 1e-12 * lmax ? -1.0 : 0.0;
        else rep.direction_u[j] = l2 > 0 ? -lam[t] / l2 : 0.0;
    }
    rep.attaining_index.s_nonpos = rep.basis;
    return rep;
}

namespace detail {

bool cap_applicable(const SolutionMap& m) {
    if (m.norms().x != NormTag::L2) return false;
    if (m.norms().b != NormTag::L2 && m.norms().b != NormTag::LInf) return false;
    if (!is_full_like(m.r()) && !m.r().as<cones::Subspace>()) return false;
    if (m.s().as<cones::Box>()) return false;
    const auto s = cones::as_signed_orthant(m.s());
    if (!s) return false;
    return std::none_of(s->signs.begin(), s->signs.end(), [](Sign g) { return g == Sign::Zero; });
}

HoffmanReport cap_route(const SolutionMap& m, const ComputeOptions& opts) {
    if (!cap_applicable(m))
        throw UnsupportedStructureError(
            "cap route needs x l2, b l2 or linf, R the full space or a subspace, S a signed orthant");
    const auto s = *cones::as_signed_orthant(m.s());
    const DenseMatrix mq = m.a() * r_parametrization(m);
    IndexSet rows;
    std::vector<double> flip;
    for (std::size_t j = 0; j < s.signs.size(); ++j) {
        if (s.signs[j] == Sign::Free) continue;
        rows.push_back(static_cast<int>(j));
        flip.push_back(s.signs[j] == Sign::Nonpos ? 1.0 : -1.0);
    }
    HoffmanReport rep;
    rep.method = Method::cap_maximization;
    if (rows.empty() || mq.cols() == 0) return rep;
    const DenseMatrix eff = mq.select_rows(rows).scale_rows(flip).transpose();
    if (linalg::rank_tol(eff) != static_cast<int>(eff.rows()))
        throw RankError("cap route: the constraint matrix does not have full column rank");
    HoffmanReport sub = hoffman_PA_star(eff, dual(m.norms().b), opts);
    rep.value = sub.value;
    rep.direction_u.assign(m.m(), 0.0);
    for (std::size_t t = 0; t < rows.size(); ++t) rep.direction_u[rows[t]] = flip[t] * sub.direction_u[t];
    for (int t : sub.basis) {
        const int j = rows[t];
        rep.basis.push_back(j);
        (flip[t] > 0 ? rep.attaining_index.s_nonpos : rep.attaining_index.s_nonneg).push_back(j);
    }
    return rep;
}

}  // namespace detail

// ---- chi measures ------------------------------------------------------------

HoffmanReport chi(const DenseMatrix& a, const ComputeOptions& opts) {
    const std::size_t m = a.rows(), n = a.cols();
    linalg::require_finite(a, "chi");
    linalg::require_desk_scale("chi", std::max(m, n));
    if (m == 0 || linalg::rank_tol(a) != static_cast<int>(m)) throw RankError("chi: A must have full row rank");
    const auto bases = subsets_of_size(n, m);
    std::vector<double> values(bases.size(), -1.0);
    std::vector<Vector> xs(bases.size());
    detail::parallel_for(bases.size(), opts.threads, [&](std::size_t i) {
        const DenseMatrix ai = a.select_columns(bases[i]);
        if (linalg::rank_tol(ai) != static_cast<int>(m)) return;
        const auto pairs = linalg::singular_pairs(ai);
        const auto& last = pairs.back();
        values[i] = 1.0 / last.sigma;
        xs[i] = linalg::scaled(1.0 / last.sigma, last.right);
    });
    const std::size_t best = detail::argmax_first(values);
    HoffmanReport rep;
    rep.method = Method::chi_basis;
    rep.value = values[best];
    rep.basis = bases[best];
    rep.tol = opts.tol;
    Vector x(n, 0.0);
    for (std::size_t t = 0; t < m; ++t) x[bases[best][t]] = xs[best][t];
    rep.direction_v = x;
    rep.witness_x = x;
    rep.witness_b = linalg::multiply(a, x);
    return rep;
}

HoffmanReport chibar(const DenseMatrix& a, const ComputeOptions& opts) {
    return chi(linalg::orthonormalize_rows(a), opts);
}

namespace detail {

bool chi_applicable(const SolutionMap& m) {
    const auto* box = m.s().as<cones::Box>();
    if (!box || (!is_full_like(m.r()) && !m.r().as<cones::Subspace>())) return false;
    if (m.norms().b != NormTag::L2 || m.norms().x != NormTag::L2) return false;
    for (std::size_t j = 0; j < box->lower.size(); ++j)
        if (!std::isfinite(box->lower[j]) || !std::isfinite(box->upper[j])) return false;
    const DenseMatrix mq = m.a() * r_parametrization(m);
    return mq.cols() > 0 && linalg::rank_tol(mq) == static_cast<int>(mq.cols());
}

HoffmanReport chi_route(const SolutionMap& m, const ComputeOptions& opts) {
    const auto* box = m.s().as<cones::Box>();
    if (!box || (!is_full_like(m.r()) && !m.r().as<cones::Subspace>()))
        throw UnsupportedStructureError("chi route needs S a box and R the full space or a subspace");
    if (m.norms().b != NormTag::L2 || m.norms().x != NormTag::L2)
        throw UnsupportedNormError("chi route needs Euclidean norms");
    for (std::size_t j = 0; j < box->lower.size(); ++j)
        if (!std::isfinite(box->lower[j]) || !std::isfinite(box->upper[j]))
            throw DomainError("chi route needs a bounded box");
    const DenseMatrix mq = m.a() * r_parametrization(m);
    const HoffmanReport c = chi(mq.transpose(), opts);
    HoffmanReport rep;
    rep.method = Method::chi_basis;
    rep.value = c.value;
    rep.basis = c.basis;
    // Signature from the signs of the maximizer; the cap direction is -|x| / ||x||.
    const double nx = linalg::norm2(c.direction_v);
    rep.direction_u.assign(m.m(), 0.0);
    rep.signature.assign(m.m(), 1);
    for (int j : c.basis) {
        const double xj = c.direction_v[j];
        const double sg = xj < 0 ? -1.0 : 1.0;
        rep.signature[j] = static_cast<int>(sg);
        rep.direction_u[j] = sg * (-std::abs(xj) / nx);
        (sg > 0 ? rep.attaining_index.s_nonpos : rep.attaining_index.s_nonneg).push_back(j);
    }
    std::sort(rep.attaining_index.s_nonpos.begin(), rep.attaining_index.s_nonpos.end());
    std::sort(rep.attaining_index.s_nonneg.begin(), rep.attaining_index.s_nonneg.end());
    return rep;
}

// ---- boxes -------------------------------------------------------------------

HoffmanReport box_route(const SolutionMap& m, const ComputeOptions& opts) {
    const auto family = mapping::box_vertex_family(m);
    const bool r_box = m.r().as<cones::Box>() != nullptr;
    std::vector<HoffmanReport> parts(family.size());
    ComputeOptions inner = opts;
    inner.threads = 1;
    const bool polyhedral = is_polyhedral(m.norms().b);
    parallel_for(family.size(), opts.threads, [&](std::size_t i) {
        const SolutionMap tm = mapping::restrict_to_tangent(m, family[i]);
        if (polyhedral) {
            parts[i] = norm_of_sublinear(tm, inner);
            parts[i].attaining_index = family[i];
        } else {
            // Each signed-orthant piece is a cone problem; by sign invariance its
            // Hoffman constant is that of the reflected orthant map.
            parts[i] = hoffman_constant(tm, inner);
            parts[i].witness_b.clear();
            parts[i].witness_x.clear();
        }
        const std::size_t k = r_box ? m.n() : m.m();
        parts[i].signature.assign(k, 0);
        const IndexSet& pos = r_box ? family[i].x_nonneg : family[i].s_nonneg;
        const IndexSet& neg = r_box ? family[i].x_nonpos : family[i].s_nonpos;
        for (int j : pos) parts[i].signature[j] = 1;
        for (int j : neg) parts[i].signature[j] = -1;
    });
    HoffmanReport rep = pick_best(parts);
    rep.method = Method::box_signature;
    return rep;
}

}  // namespace detail

HoffmanReport hoffman_box(const DenseMatrix& a, const cones::Box& box, const ConeRepr& l, mapping::NormPair norms,
                          const ComputeOptions& opts) {
    for (std::size_t i = 0; i < box.lower.size(); ++i)
        if (!std::isfinite(box.lower[i]) || !std::isfinite(box.upper[i]))
            throw DomainError("hoffman_box: the box must be bounded");
    if (!l.as<cones::Subspace>() && !l.as<cones::ZeroSet>() && !l.as<cones::FullSpace>())
        throw UnsupportedStructureError("hoffman_box: L must be a subspace");
    return hoffman_constant(SolutionMap(a, box, l, norms), opts);
}

ChiLowerBound chi_lower_bound_random(const DenseMatrix& a, int trials, std::uint64_t seed) {
    if (trials < 1) throw InputError("chi_lower_bound_random: trials must be positive");
    const std::size_t m = a.rows(), n = a.cols();
    if (m == 0 || linalg::rank_tol(a) != static_cast<int>(m))
        throw RankError("chi_lower_bound_random: A must have full row rank");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> logd(std::log(1e-6), std::log(1e6));
    ChiLowerBound out;
    for (int t = 0; t < trials; ++t) {
        Vector d(n, 1.0);
        if (t > 0)
            for (double& x : d) x = std::exp(logd(rng));
        // (A D A^T)^{-1} A D = (W^T)^+ D^{1/2} with W = A D^{1/2}; computed from the SVD of W.
        Vector root(n);
        for (std::size_t j = 0; j < n; ++j) root[j] = std::sqrt(d[j]);
        const DenseMatrix w = a.scale_columns(root);
        const auto pairs = linalg::singular_pairs(w);
        if (pairs.back().sigma <= 1e-14 * pairs.front().sigma) {
            ++out.skipped;
            continue;
        }
        DenseMatrix k(m, n);
        for (const auto& p : pairs)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) k(i, j) += p.left[i] * p.right[j] * root[j] / p.sigma;
        const double v = linalg::spectral_norm(k);
        if (v > out.value) {
            out.value = v;
            out.best_d = d;
        }
    }
    return out;
}

}  // namespace hoffman
