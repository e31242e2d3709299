#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hoffman/cones.hpp"
#include "hoffman/linalg.hpp"
#include "hoffman/norms.hpp"

namespace hoffman::mapping {

/// Norm on the right-hand-side space (b in R^m) and on the solution space (x in R^n).
struct NormPair {
    NormTag b = NormTag::L2;
    NormTag x = NormTag::L2;

    /// Norms of the adjoint map: (dual of x-norm, dual of b-norm).
    NormPair dualized() const noexcept { return {dual(x), dual(b)}; }

    friend bool operator==(const NormPair&, const NormPair&) = default;
};

/// The solution map b -> {x in R : A x - b in S}.
class SolutionMap {
public:
    SolutionMap(DenseMatrix a, cones::ConeRepr r, cones::ConeRepr s, NormPair norms);

    const DenseMatrix& a() const noexcept { return a_; }
    const cones::ConeRepr& r() const noexcept { return r_; }
    const cones::ConeRepr& s() const noexcept { return s_; }
    const NormPair& norms() const noexcept { return norms_; }
    std::size_t m() const noexcept { return a_.rows(); }
    std::size_t n() const noexcept { return a_.cols(); }

    bool is_sublinear() const;

private:
    DenseMatrix a_;
    cones::ConeRepr r_;
    cones::ConeRepr s_;
    NormPair norms_;
};

/// Active constraint slots of a tangent cone.  x_nonneg / x_nonpos are the
/// coordinates of R held at x_i >= 0 / x_i <= 0; s_nonneg / s_nonpos likewise
/// for the coordinates of S.  Slots not listed are relaxed to free.
struct TangentIndex {
    IndexSet x_nonneg;
    IndexSet x_nonpos;
    IndexSet s_nonneg;
    IndexSet s_nonpos;

    std::size_t size() const noexcept {
        return x_nonneg.size() + x_nonpos.size() + s_nonneg.size() + s_nonpos.size();
    }
    /// "primal" when only R slots are active, "dual" when only S slots are, else "mixed".
    std::string side() const;

    friend bool operator==(const TangentIndex&, const TangentIndex&) = default;
};

/// Canonical order: larger first, then lexicographic on (x_nonneg, x_nonpos, s_nonneg, s_nonpos).
bool canonical_less(const TangentIndex& a, const TangentIndex& b);

/// P_{A^T, S*, -R*} with dualized norms.
SolutionMap adjoint(const SolutionMap& m);

/// Map whose graph is the tangent cone selected by t.
SolutionMap restrict_to_tangent(const SolutionMap& m, const TangentIndex& t);

struct SlaterCheck {
    bool holds = false;
    Vector witness;  ///< xi with xi in ri(R_T), A xi in ri(S_T)
    double margin = 0.0;
};

/// Slater condition for the tangent map: some xi in ri(R_T) with A xi in ri(S_T).
SlaterCheck slater(const SolutionMap& m, const TangentIndex& t);

/// Primal Slater condition of m itself: x in ri(R), A x in ri(S).
SlaterCheck primal_slater(const SolutionMap& m);

/// Dual Slater condition: the primal Slater condition of the adjoint.
SlaterCheck dual_slater(const SolutionMap& m);

/// True when R or S is a box with a finite nonzero bound.
bool has_box(const SolutionMap& m);

/// Inclusion-maximal Slater tangent indices in canonical order.  For maps
/// with a box the Slater members of the two-sided vertex family are returned.
std::vector<TangentIndex> tangent_slater_sets(const SolutionMap& m);

/// Two-sided vertex family {(I, I^c)} over the box coordinates, canonical order.
std::vector<TangentIndex> box_vertex_family(const SolutionMap& m);

/// Every tangent index the structure allows: each orthant slot active or not,
/// each box coordinate at its lower bound, upper bound or inside.
std::vector<TangentIndex> all_tangent_indices(const SolutionMap& m);

struct DomainSubspace {
    bool is_subspace = false;
    DenseMatrix basis;  ///< m x k orthonormal, valid when is_subspace
};

/// dom(m) = A(R) - S is a subspace exactly when the primal Slater condition holds.
DomainSubspace dom_is_subspace(const SolutionMap& m);

/// H-description of dom(m) = A(R) - S (cones only).
cones::ConeRepr domain_cone(const SolutionMap& m);

}  // namespace hoffman::mapping
