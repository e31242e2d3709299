#include "hoffman/constants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hoffman/error.hpp"
#include "hoffman/rays.hpp"
#include "internal.hpp"
#include "parallel.hpp"

namespace hoffman {

using cones::ConeRepr;
using cones::Sign;
using mapping::SolutionMap;
using mapping::TangentIndex;

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::subspace_norm: return "subspace-norm";
        case Method::maximal_slater_max: return "maximal-slater-max";
        case Method::box_signature: return "box-signature";
        case Method::chi_basis: return "chi-basis";
        case Method::geometric_inradius: return "geometric-inradius";
        case Method::cap_maximization: return "cap-maximization";
    }
    return "unknown";
}

Route parse_route(std::string_view s) {
    if (s == "auto") return Route::automatic;
    if (s == "subspace") return Route::subspace;
    if (s == "slater-max") return Route::slater_max;
    if (s == "geometric") return Route::geometric;
    if (s == "cap") return Route::cap;
    if (s == "chi") return Route::chi;
    throw InputError("unknown method '" + std::string(s) + "'");
}

namespace detail {

lp::MinNormResult inner_min(const SolutionMap& m, std::span<const double> u) {
    const std::size_t n = m.n();
    lp::HPolytope set = cones::describe(m.r());
    if (set.dim() == 0) set = lp::HPolytope(n);
    const lp::HPolytope s = cones::describe(m.s());
    for (std::size_t i = 0; i < s.ineq_matrix.rows(); ++i)
        set.add_ineq(linalg::multiply_transpose(m.a(), s.ineq_matrix.row(i)),
                     s.ineq_rhs[i] + linalg::dot(s.ineq_matrix.row(i), u));
    for (std::size_t i = 0; i < s.eq_matrix.rows(); ++i)
        set.add_eq(linalg::multiply_transpose(m.a(), s.eq_matrix.row(i)),
                   s.eq_rhs[i] + linalg::dot(s.eq_matrix.row(i), u));
    return lp::min_norm_any(m.norms().x, set);
}

TangentIndex full_index(const SolutionMap& m) {
    TangentIndex t;
    if (auto o = cones::as_signed_orthant(m.r()))
        for (std::size_t i = 0; i < o->signs.size(); ++i) {
            if (o->signs[i] == Sign::Nonneg) t.x_nonneg.push_back(static_cast<int>(i));
            if (o->signs[i] == Sign::Nonpos) t.x_nonpos.push_back(static_cast<int>(i));
        }
    if (auto o = cones::as_signed_orthant(m.s()))
        for (std::size_t i = 0; i < o->signs.size(); ++i) {
            if (o->signs[i] == Sign::Nonneg) t.s_nonneg.push_back(static_cast<int>(i));
            if (o->signs[i] == Sign::Nonpos) t.s_nonpos.push_back(static_cast<int>(i));
        }
    return t;
}

namespace {

// Pointed pieces covering R^m on which the b-norm is linear, as rows p with p.u >= 0.
std::vector<DenseMatrix> norm_pieces(NormTag norm_tag, std::size_t m) {
    std::vector<DenseMatrix> pieces;
    if (norm_tag == NormTag::LInf) {
        for (std::size_t i = 0; i < m; ++i) {
            for (double s : {1.0, -1.0}) {
                std::vector<Vector> rows;
                Vector own(m, 0.0);
                own[i] = s;
                rows.push_back(own);
                for (std::size_t l = 0; l < m; ++l) {
                    if (l == i) continue;
                    for (double t : {1.0, -1.0}) {
                        Vector r = own;
                        r[l] = -t;
                        rows.push_back(r);
                    }
                }
                pieces.push_back(DenseMatrix::from_rows(rows, m));
            }
        }
    } else {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            DenseMatrix p(m, m);
            for (std::size_t i = 0; i < m; ++i) p(i, i) = (mask >> i & 1U) ? -1.0 : 1.0;
            pieces.push_back(std::move(p));
        }
    }
    return pieces;
}

}  // namespace

HoffmanReport slater_max_route(const SolutionMap& m, const ComputeOptions& opts) {
    const auto sets = mapping::tangent_slater_sets(m);
    if (sets.empty()) throw InvariantError("no Slater tangent index found (the empty index always qualifies)");
    std::vector<HoffmanReport> parts(sets.size());
    ComputeOptions inner = opts;
    inner.threads = 1;
    parallel_for(sets.size(), opts.threads, [&](std::size_t i) {
        parts[i] = norm_of_sublinear(mapping::restrict_to_tangent(m, sets[i]), inner);
    });
    std::vector<double> values;
    for (const auto& p : parts) values.push_back(p.value);
    const std::size_t best = argmax_first(values);
    HoffmanReport rep = std::move(parts[best]);
    rep.attaining_index = sets[best];
    rep.method = Method::maximal_slater_max;
    return rep;
}

}  // namespace detail

HoffmanReport norm_of_sublinear(const SolutionMap& m, const ComputeOptions& opts) {
    if (!m.is_sublinear()) throw DomainError("norm_of_sublinear: R and S must be cones");
    const NormTag bn = m.norms().b;
    if (!is_polyhedral(bn))
        throw UnsupportedNormError(
            "norm_of_sublinear: an l2 b-norm has no exact generic route for this structure; use the oracle");
    HoffmanReport rep;
    rep.method = Method::subspace_norm;
    rep.tol = opts.tol;
    rep.attaining_index = detail::full_index(m);
    const std::size_t M = m.m();
    if (M == 0) return rep;

    const lp::HPolytope dom = cones::describe(mapping::domain_cone(m));
    DenseMatrix dom_ge(dom.ineq_matrix.rows(), M);
    for (std::size_t i = 0; i < dom.ineq_matrix.rows(); ++i)
        for (std::size_t j = 0; j < M; ++j) dom_ge(i, j) = -dom.ineq_matrix(i, j);
    const DenseMatrix dom_eq = dom.eq_matrix.rows() > 0 ? dom.eq_matrix : DenseMatrix(0, M);

    std::vector<Vector> directions;
    for (const DenseMatrix& piece : detail::norm_pieces(bn, M)) {
        const auto gens = rays::cone_generators(linalg::vstack(dom_ge, piece), dom_eq, M);
        if (gens.lineality.cols() > 0) throw InvariantError("norm_of_sublinear: piece of the domain is not pointed");
        for (Vector r : gens.rays) {
            const double nr = norm(bn, r);
            if (nr <= 0) continue;
            for (double& x : r) x /= nr;
            bool dup = false;
            for (const auto& d : directions) {
                double diff = 0.0;
                for (std::size_t j = 0; j < M; ++j) diff = std::max(diff, std::abs(d[j] - r[j]));
                if (diff <= 1e-9) {
                    dup = true;
                    break;
                }
            }
            if (!dup) directions.push_back(std::move(r));
        }
    }
    if (directions.empty()) return rep;  // dom = {0}

    std::vector<double> values(directions.size());
    std::vector<Vector> preimages(directions.size());
    detail::parallel_for(directions.size(), opts.threads, [&](std::size_t i) {
        const auto r = detail::inner_min(m, directions[i]);
        if (r.status != lp::LpStatus::optimal)
            throw InvariantError("norm_of_sublinear: a domain direction has no preimage");
        values[i] = r.value;
        preimages[i] = r.point;
    });
    const std::size_t best = detail::argmax_first(values);
    rep.value = values[best];
    rep.direction_u = directions[best];
    rep.direction_v = preimages[best];
    return rep;
}

void attach_witness(const SolutionMap& m, HoffmanReport& rep) {
    if (rep.infinite || rep.direction_u.empty()) return;
    if (rep.value <= rep.tol) {
        // Every ratio is zero up to roundoff; no pair certifies anything.
        if (rep.diagnostic.empty()) rep.diagnostic = "value is zero; no witness pair";
        return;
    }
    const TangentIndex& t = rep.attaining_index;
    const SolutionMap tm = mapping::restrict_to_tangent(m, t);
    if (rep.direction_v.empty()) {
        const auto r = detail::inner_min(tm, rep.direction_u);
        if (r.status != lp::LpStatus::optimal) throw InvariantError("attach_witness: direction has no preimage");
        rep.direction_v = r.point;
    }
    double width = 1.0;
    // Base point with exactly the slots of t active.
    auto base = [&](const ConeRepr& c, const IndexSet& nonneg, const IndexSet& nonpos) {
        const std::size_t n = cones::dim(c);
        Vector p(n, 0.0);
        auto listed = [](const IndexSet& s, int i) { return std::find(s.begin(), s.end(), i) != s.end(); };
        if (auto o = cones::as_signed_orthant(c)) {
            for (std::size_t i = 0; i < n; ++i) {
                const int ii = static_cast<int>(i);
                if (o->signs[i] == Sign::Nonneg && !listed(nonneg, ii)) p[i] = 1.0;
                if (o->signs[i] == Sign::Nonpos && !listed(nonpos, ii)) p[i] = -1.0;
            }
        } else if (const auto* b = c.as<cones::Box>()) {
            for (std::size_t i = 0; i < n; ++i) {
                const int ii = static_cast<int>(i);
                const double lo = b->lower[i], hi = b->upper[i];
                if (std::isfinite(lo) && std::isfinite(hi)) width = std::min(width, (hi - lo) / 2);
                if (listed(nonneg, ii)) p[i] = lo;
                else if (listed(nonpos, ii)) p[i] = hi;
                else if (std::isfinite(lo) && std::isfinite(hi)) p[i] = (lo + hi) / 2;
                else if (std::isfinite(lo)) p[i] = lo + 1.0;
                else if (std::isfinite(hi)) p[i] = hi - 1.0;
            }
        }
        return p;
    };
    const Vector x0 = base(m.r(), t.x_nonneg, t.x_nonpos);
    const Vector s0 = base(m.s(), t.s_nonneg, t.s_nonpos);
    const Vector& u = rep.direction_u;
    const Vector& v = rep.direction_v;
    const double vinf = linalg::norm_inf(v);
    const double reach = std::max({1.0, vinf, static_cast<double>(m.n()) * linalg::max_abs(m.a()) * vinf +
                                                  linalg::norm_inf(u)});
    const double step = 0.25 * width / reach;
    Vector b = linalg::multiply(m.a(), x0);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] += -s0[i] + step * u[i];
    rep.witness_b = std::move(b);
    rep.witness_x = x0;
}

HoffmanReport hoffman_constant(const SolutionMap& m, const ComputeOptions& opts, Route route) {
    HoffmanReport rep;
    switch (route) {
        case Route::chi:
            rep = detail::chi_route(m, opts);
            break;
        case Route::cap:
            rep = detail::cap_route(m, opts);
            break;
        case Route::geometric:
            rep = detail::geometric_route(m, opts);
            break;
        case Route::subspace: {
            if (mapping::has_box(m)) throw UnsupportedStructureError("subspace route needs conic R and S");
            if (!mapping::dom_is_subspace(m).is_subspace)
                throw DomainError("subspace route: the domain is not a linear subspace (primal Slater fails)");
            rep = norm_of_sublinear(m, opts);
            rep.method = Method::subspace_norm;
            break;
        }
        case Route::slater_max:
            if (mapping::has_box(m)) {
                rep = detail::box_route(m, opts);
                break;
            }
            rep = detail::slater_max_route(m, opts);
            break;
        case Route::automatic: {
            if (detail::chi_applicable(m)) {
                rep = detail::chi_route(m, opts);
                break;
            }
            if (mapping::has_box(m)) {
                rep = detail::box_route(m, opts);
                break;
            }
            const mapping::NormPair norms = m.norms();
            if (!is_polyhedral(norms.b) || (norms.x == NormTag::L2 && detail::cap_applicable(m))) {
                if (detail::geometric_applicable(m)) {
                    rep = detail::geometric_route(m, opts);
                    break;
                }
                if (detail::cap_applicable(m)) {
                    rep = detail::cap_route(m, opts);
                    break;
                }
                throw UnsupportedNormError("no exact route for b-norm " + std::string(to_string(norms.b)) +
                                           " with x-norm " + std::string(to_string(norms.x)) + " on R=" +
                                           cones::kind_name(m.r()) + ", S=" + cones::kind_name(m.s()) +
                                           "; use the oracle for a lower bound");
            }
            if (mapping::dom_is_subspace(m).is_subspace) {
                rep = norm_of_sublinear(m, opts);
                rep.method = Method::subspace_norm;
            } else {
                rep = detail::slater_max_route(m, opts);
            }
            break;
        }
    }
    rep.tol = opts.tol;
    attach_witness(m, rep);
    return rep;
}

}  // namespace hoffman
