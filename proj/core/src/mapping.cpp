#include "hoffman/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "hoffman/error.hpp"
#include "hoffman/lp.hpp"

namespace hoffman::mapping {

using cones::Box;
using cones::ConeRepr;
using cones::Sign;
using cones::SignedOrthant;

namespace {

enum class Structure { orthant, box, linear, other };

Structure classify(const ConeRepr& c) {
    if (cones::as_signed_orthant(c)) return Structure::orthant;
    if (c.as<Box>()) return Structure::box;
    if (c.as<cones::Subspace>()) return Structure::linear;
    return Structure::other;
}

void validate_cone(const ConeRepr& c, std::size_t expected, const char* what) {
    if (cones::dim(c) != expected)
        throw InputError(std::string("solution map: ") + what + " has dimension " + std::to_string(cones::dim(c)) +
                         ", expected " + std::to_string(expected));
    if (const auto* b = c.as<Box>()) {
        if (b->lower.size() != b->upper.size()) throw InputError("box bounds differ in length");
        for (std::size_t i = 0; i < b->lower.size(); ++i) {
            if (std::isnan(b->lower[i]) || std::isnan(b->upper[i])) throw InputError("box bound is NaN");
            if (!(b->lower[i] < b->upper[i]) && !(b->lower[i] == 0.0 && b->upper[i] == 0.0))
                throw DomainError("box requires lower < upper componentwise");
        }
    }
    if (const auto* s = c.as<cones::Subspace>()) {
        if (!s->basis.all_finite()) throw InputError("subspace basis has non-finite entries");
        if (linalg::rank_tol(s->basis) != static_cast<int>(s->basis.cols()))
            throw InputError("subspace basis columns are dependent");
    }
    if (const auto* p = c.as<cones::Product>()) {
        for (const auto& part : p->parts) validate_cone(part, cones::dim(part), what);
    }
}

// Linear rows of a cone with the rows that must hold strictly in its relative interior.
struct ConeRows {
    lp::HPolytope rows;
    IndexSet strict;
};

ConeRows cone_rows(const ConeRepr& c) {
    ConeRows out{cones::describe(c), {}};
    const bool may_hide_equalities = !cones::as_signed_orthant(c) && !c.as<Box>() && !c.as<cones::Subspace>();
    for (std::size_t i = 0; i < out.rows.ineq_matrix.rows(); ++i) {
        if (may_hide_equalities && !lp::strict_feasibility(out.rows, IndexSet{static_cast<int>(i)}).feasible) {
            out.rows.add_eq(out.rows.ineq_matrix.row_vector(i), out.rows.ineq_rhs[i]);
            continue;
        }
        out.strict.push_back(static_cast<int>(i));
    }
    return out;
}

bool contains_index(const IndexSet& s, int i) { return std::find(s.begin(), s.end(), i) != s.end(); }

SignedOrthant restrict_side(const ConeRepr& c, const IndexSet& nonneg, const IndexSet& nonpos, const char* side) {
    const std::size_t n = cones::dim(c);
    for (const IndexSet* set : {&nonneg, &nonpos})
        for (int i : *set)
            if (i < 0 || static_cast<std::size_t>(i) >= n)
                throw DomainError(std::string("tangent index out of range on ") + side);
    SignedOrthant out{std::vector<Sign>(n, Sign::Free)};
    if (auto o = cones::as_signed_orthant(c)) {
        for (std::size_t i = 0; i < n; ++i) {
            const int ii = static_cast<int>(i);
            const bool in_pos = contains_index(nonneg, ii), in_neg = contains_index(nonpos, ii);
            switch (o->signs[i]) {
                case Sign::Nonneg:
                    if (in_neg) throw DomainError(std::string("tangent index conflicts with orthant sign on ") + side);
                    out.signs[i] = in_pos ? Sign::Nonneg : Sign::Free;
                    break;
                case Sign::Nonpos:
                    if (in_pos) throw DomainError(std::string("tangent index conflicts with orthant sign on ") + side);
                    out.signs[i] = in_neg ? Sign::Nonpos : Sign::Free;
                    break;
                case Sign::Zero:
                case Sign::Free:
                    if (in_pos || in_neg)
                        throw DomainError(std::string("tangent index names an unconstrained coordinate on ") + side);
                    out.signs[i] = o->signs[i];
                    break;
            }
        }
        return out;
    }
    if (const auto* b = c.as<Box>()) {
        for (std::size_t i = 0; i < n; ++i) {
            const int ii = static_cast<int>(i);
            const bool in_pos = contains_index(nonneg, ii), in_neg = contains_index(nonpos, ii);
            if (in_pos && in_neg) throw DomainError("tangent index sets overlap");
            if (in_pos && !std::isfinite(b->lower[i]))
                throw DomainError(std::string("tangent index uses an infinite lower bound on ") + side);
            if (in_neg && !std::isfinite(b->upper[i]))
                throw DomainError(std::string("tangent index uses an infinite upper bound on ") + side);
            out.signs[i] = in_pos ? Sign::Nonneg : in_neg ? Sign::Nonpos : Sign::Free;
        }
        return out;
    }
    throw UnsupportedStructureError(std::string("tangent cones of a ") + cones::kind_name(c) + " on " + side +
                                    " are not supported");
}

// Orthant slots of one side: (coordinate, sign) for every Nonneg/Nonpos coordinate.
std::vector<std::pair<int, Sign>> orthant_slots(const ConeRepr& c) {
    std::vector<std::pair<int, Sign>> slots;
    if (auto o = cones::as_signed_orthant(c)) {
        for (std::size_t i = 0; i < o->signs.size(); ++i)
            if (o->signs[i] == Sign::Nonneg || o->signs[i] == Sign::Nonpos)
                slots.emplace_back(static_cast<int>(i), o->signs[i]);
    }
    return slots;
}

struct Slot {
    bool on_x;
    int coord;
    Sign sign;
};

TangentIndex index_from_slots(const std::vector<Slot>& slots, std::uint64_t mask) {
    TangentIndex t;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (!(mask >> k & 1U)) continue;
        const Slot& s = slots[k];
        IndexSet& target = s.on_x ? (s.sign == Sign::Nonneg ? t.x_nonneg : t.x_nonpos)
                                  : (s.sign == Sign::Nonneg ? t.s_nonneg : t.s_nonpos);
        target.push_back(s.coord);
    }
    return t;
}

constexpr std::size_t kExhaustiveSlots = 12;

bool lex_less_desc(const IndexSet& a, const IndexSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
}

}  // namespace

SolutionMap::SolutionMap(DenseMatrix a, ConeRepr r, ConeRepr s, NormPair norms)
    : a_(std::move(a)), r_(std::move(r)), s_(std::move(s)), norms_(norms) {
    linalg::require_finite(a_, "solution map matrix");
    linalg::require_desk_scale("solution map", std::max(a_.rows(), a_.cols()));
    validate_cone(r_, a_.cols(), "R");
    validate_cone(s_, a_.rows(), "S");
}

bool SolutionMap::is_sublinear() const { return cones::is_cone(r_) && cones::is_cone(s_); }

std::string TangentIndex::side() const {
    const bool x = !x_nonneg.empty() || !x_nonpos.empty();
    const bool s = !s_nonneg.empty() || !s_nonpos.empty();
    if (x && s) return "mixed";
    return s ? "dual" : "primal";
}

bool canonical_less(const TangentIndex& a, const TangentIndex& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    if (a.x_nonneg != b.x_nonneg) return lex_less_desc(a.x_nonneg, b.x_nonneg);
    if (a.x_nonpos != b.x_nonpos) return lex_less_desc(a.x_nonpos, b.x_nonpos);
    if (a.s_nonneg != b.s_nonneg) return lex_less_desc(a.s_nonneg, b.s_nonneg);
    return lex_less_desc(a.s_nonpos, b.s_nonpos);
}

SolutionMap adjoint(const SolutionMap& m) {
    if (!cones::is_cone(m.r()) || !cones::is_cone(m.s()))
        throw DomainError("adjoint: R and S must be cones (a box with finite bounds is not)");
    return SolutionMap(m.a().transpose(), cones::canonicalize(cones::dual_cone(m.s())),
                       cones::canonicalize(cones::negate(cones::dual_cone(m.r()))), m.norms().dualized());
}

SolutionMap restrict_to_tangent(const SolutionMap& m, const TangentIndex& t) {
    ConeRepr r = m.r(), s = m.s();
    const bool x_listed = !t.x_nonneg.empty() || !t.x_nonpos.empty();
    const bool s_listed = !t.s_nonneg.empty() || !t.s_nonpos.empty();
    if (classify(m.r()) == Structure::linear) {
        if (x_listed) throw DomainError("tangent index names coordinates of a subspace R");
    } else {
        r = restrict_side(m.r(), t.x_nonneg, t.x_nonpos, "R");
    }
    if (classify(m.s()) == Structure::linear) {
        if (s_listed) throw DomainError("tangent index names coordinates of a subspace S");
    } else {
        s = restrict_side(m.s(), t.s_nonneg, t.s_nonpos, "S");
    }
    return SolutionMap(m.a(), std::move(r), std::move(s), m.norms());
}

SlaterCheck primal_slater(const SolutionMap& m) {
    if (!m.is_sublinear()) throw DomainError("Slater condition requires conic R and S");
    const std::size_t n = m.n();
    const ConeRows r = cone_rows(m.r());
    const ConeRows s = cone_rows(m.s());
    // Rows in xi: R rows as is, S rows composed with A.
    lp::HPolytope sys(n);
    IndexSet strict;
    for (std::size_t i = 0; i < r.rows.ineq_matrix.rows(); ++i) {
        sys.add_ineq(r.rows.ineq_matrix.row(i), 0.0);
        if (contains_index(r.strict, static_cast<int>(i))) strict.push_back(static_cast<int>(sys.ineq_rhs.size() - 1));
    }
    for (std::size_t i = 0; i < r.rows.eq_matrix.rows(); ++i) sys.add_eq(r.rows.eq_matrix.row(i), 0.0);
    for (std::size_t i = 0; i < s.rows.ineq_matrix.rows(); ++i) {
        sys.add_ineq(linalg::multiply_transpose(m.a(), s.rows.ineq_matrix.row(i)), 0.0);
        if (contains_index(s.strict, static_cast<int>(i))) strict.push_back(static_cast<int>(sys.ineq_rhs.size() - 1));
    }
    for (std::size_t i = 0; i < s.rows.eq_matrix.rows(); ++i)
        sys.add_eq(linalg::multiply_transpose(m.a(), s.rows.eq_matrix.row(i)), 0.0);
    const auto sf = lp::strict_feasibility(sys, strict);
    return {sf.feasible, sf.witness, sf.margin};
}

SlaterCheck slater(const SolutionMap& m, const TangentIndex& t) { return primal_slater(restrict_to_tangent(m, t)); }

SlaterCheck dual_slater(const SolutionMap& m) { return primal_slater(adjoint(m)); }

bool has_box(const SolutionMap& m) {
    return classify(m.r()) == Structure::box || classify(m.s()) == Structure::box;
}

std::vector<TangentIndex> box_vertex_family(const SolutionMap& m) {
    const bool r_box = classify(m.r()) == Structure::box;
    const bool s_box = classify(m.s()) == Structure::box;
    if (r_box == s_box) throw UnsupportedStructureError("box tangent family needs exactly one box side");
    const ConeRepr& box_side = r_box ? m.r() : m.s();
    const ConeRepr& other = r_box ? m.s() : m.r();
    const Structure os = classify(other);
    const bool other_linear = os == Structure::linear || other.as<cones::ZeroSet>() || other.as<cones::FullSpace>();
    if (!other_linear)
        throw UnsupportedStructureError("box tangent family needs a subspace on the other side, got " +
                                        cones::kind_name(other));
    const Box& b = *box_side.as<Box>();
    std::vector<int> two_sided;
    TangentIndex fixed;
    for (std::size_t i = 0; i < b.lower.size(); ++i) {
        const bool lo = std::isfinite(b.lower[i]), hi = std::isfinite(b.upper[i]);
        if (lo && hi) two_sided.push_back(static_cast<int>(i));
        else if (lo) (r_box ? fixed.x_nonneg : fixed.s_nonneg).push_back(static_cast<int>(i));
        else if (hi) (r_box ? fixed.x_nonpos : fixed.s_nonpos).push_back(static_cast<int>(i));
    }
    if (two_sided.size() > 20) throw ScaleError("box tangent family too large");
    std::vector<TangentIndex> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << two_sided.size()); ++mask) {
        TangentIndex t = fixed;
        IndexSet& pos = r_box ? t.x_nonneg : t.s_nonneg;
        IndexSet& neg = r_box ? t.x_nonpos : t.s_nonpos;
        for (std::size_t k = 0; k < two_sided.size(); ++k) (mask >> k & 1U ? pos : neg).push_back(two_sided[k]);
        std::sort(pos.begin(), pos.end());
        std::sort(neg.begin(), neg.end());
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::vector<TangentIndex> tangent_slater_sets(const SolutionMap& m) {
    if (has_box(m)) {
        std::vector<TangentIndex> out;
        for (auto& t : box_vertex_family(m))
            if (slater(m, t).holds) out.push_back(std::move(t));
        return out;
    }
    for (const ConeRepr* c : {&m.r(), &m.s()}) {
        const Structure st = classify(*c);
        if (st != Structure::orthant && st != Structure::linear)
            throw UnsupportedStructureError("tangent enumeration does not support a " + cones::kind_name(*c) +
                                            " reference set");
    }
    std::vector<Slot> slots;
    for (auto [i, sg] : orthant_slots(m.r())) slots.push_back({true, i, sg});
    for (auto [i, sg] : orthant_slots(m.s())) slots.push_back({false, i, sg});
    const std::size_t k = slots.size();
    if (k > 62) throw ScaleError("tangent enumeration: too many constraint slots");

    std::vector<std::uint64_t> found;
    auto is_subset_of_found = [&](std::uint64_t mask) {
        return std::any_of(found.begin(), found.end(), [&](std::uint64_t f) { return (mask & ~f) == 0; });
    };
    auto holds = [&](std::uint64_t mask) { return slater(m, index_from_slots(slots, mask)).holds; };

    if (k <= kExhaustiveSlots) {
        // Cardinality descending; within a cardinality, lexicographic slot order.
        for (std::size_t card = k + 1; card-- > 0;) {
            std::vector<int> idx(card);
            for (std::size_t i = 0; i < card; ++i) idx[i] = static_cast<int>(i);
            for (;;) {
                std::uint64_t mask = 0;
                for (int i : idx) mask |= std::uint64_t{1} << i;
                if (!is_subset_of_found(mask) && holds(mask)) found.push_back(mask);
                std::size_t i = card;
                while (i > 0 && static_cast<std::size_t>(idx[i - 1]) == k - card + i - 1) --i;
                if (i == 0) break;
                ++idx[i - 1];
                for (std::size_t j = i; j < card; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    } else {
        // Greedy growth from the empty set and from each singleton.
        std::vector<std::uint64_t> grown;
        for (std::size_t start = 0; start <= k; ++start) {
            std::uint64_t mask = start == k ? 0 : std::uint64_t{1} << start;
            if (!holds(mask)) continue;
            for (std::size_t j = 0; j < k; ++j) {
                const std::uint64_t bigger = mask | std::uint64_t{1} << j;
                if (bigger != mask && holds(bigger)) mask = bigger;
            }
            grown.push_back(mask);
        }
        std::sort(grown.begin(), grown.end());
        grown.erase(std::unique(grown.begin(), grown.end()), grown.end());
        for (std::uint64_t g : grown) {
            const bool dominated = std::any_of(grown.begin(), grown.end(), [&](std::uint64_t h) {
                return h != g && (g & ~h) == 0;
            });
            if (!dominated) found.push_back(g);
        }
    }
    std::vector<TangentIndex> out;
    for (std::uint64_t f : found) out.push_back(index_from_slots(slots, f));
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::vector<TangentIndex> all_tangent_indices(const SolutionMap& m) {
    // Each orthant slot has two states (relaxed, active); each box coordinate three.
    struct Choice {
        bool on_x;
        int coord;
        std::vector<Sign> states;
    };
    std::vector<Choice> choices;
    for (int side = 0; side < 2; ++side) {
        const ConeRepr& c = side == 0 ? m.r() : m.s();
        const bool on_x = side == 0;
        const Structure st = classify(c);
        if (st == Structure::orthant) {
            for (auto [i, sg] : orthant_slots(c)) choices.push_back({on_x, i, {Sign::Free, sg}});
        } else if (st == Structure::box) {
            const Box& b = *c.as<Box>();
            for (std::size_t i = 0; i < b.lower.size(); ++i) {
                Choice ch{on_x, static_cast<int>(i), {Sign::Free}};
                if (std::isfinite(b.lower[i])) ch.states.push_back(Sign::Nonneg);
                if (std::isfinite(b.upper[i])) ch.states.push_back(Sign::Nonpos);
                if (ch.states.size() > 1) choices.push_back(std::move(ch));
            }
        } else if (st != Structure::linear) {
            throw UnsupportedStructureError("tangent enumeration does not support a " + cones::kind_name(c) +
                                            " reference set");
        }
    }
    double total = 1.0;
    for (const auto& ch : choices) total *= static_cast<double>(ch.states.size());
    if (total > 600000.0) throw ScaleError("all_tangent_indices: too many tangent cones");
    std::vector<TangentIndex> out;
    std::vector<std::size_t> state(choices.size(), 0);
    for (;;) {
        TangentIndex t;
        for (std::size_t k = 0; k < choices.size(); ++k) {
            const Sign sg = choices[k].states[state[k]];
            if (sg == Sign::Free) continue;
            IndexSet& target = choices[k].on_x ? (sg == Sign::Nonneg ? t.x_nonneg : t.x_nonpos)
                                               : (sg == Sign::Nonneg ? t.s_nonneg : t.s_nonpos);
            target.push_back(choices[k].coord);
        }
        out.push_back(std::move(t));
        std::size_t k = 0;
        while (k < choices.size() && ++state[k] == choices[k].states.size()) state[k++] = 0;
        if (k == choices.size()) break;
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

DomainSubspace dom_is_subspace(const SolutionMap& m) {
    DomainSubspace out;
    if (!primal_slater(m).holds) return out;
    out.is_subspace = true;
    std::vector<Vector> cols;
    const auto gr = cones::generators(m.r());
    for (const auto& v : gr.rays) cols.push_back(linalg::multiply(m.a(), v));
    for (const auto& v : gr.lineality) cols.push_back(linalg::multiply(m.a(), v));
    const auto gs = cones::generators(m.s());
    for (const auto& v : gs.rays) cols.push_back(v);
    for (const auto& v : gs.lineality) cols.push_back(v);
    out.basis = cols.empty() ? DenseMatrix(m.m(), 0)
                             : linalg::range_basis(DenseMatrix::from_columns(cols, m.m()));
    return out;
}

ConeRepr domain_cone(const SolutionMap& m) {
    if (!m.is_sublinear()) throw DomainError("domain_cone: R and S must be cones");
    return cones::image_minus_cone(m.a(), m.r(), m.s());
}

}  // namespace hoffman::mapping
