#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hoffman/linalg.hpp"
#include "hoffman/lp.hpp"
#include "hoffman/norms.hpp"

namespace hoffman::cones {

enum class Sign { Nonneg, Nonpos, Zero, Free };

/// {x : x_i >= 0 (Nonneg), x_i <= 0 (Nonpos), x_i = 0 (Zero)}; Free coordinates unconstrained.
struct SignedOrthant {
    std::vector<Sign> signs;

    static SignedOrthant nonneg(std::size_t n) { return {std::vector<Sign>(n, Sign::Nonneg)}; }
    static SignedOrthant nonpos(std::size_t n) { return {std::vector<Sign>(n, Sign::Nonpos)}; }
    /// x_I >= 0, x_J <= 0, remaining coordinates free.
    static SignedOrthant from_sets(std::size_t n, const IndexSet& nonneg, const IndexSet& nonpos);

    friend bool operator==(const SignedOrthant&, const SignedOrthant&) = default;
};

/// {x : lower <= x <= upper}; infinite bounds allowed.
struct Box {
    Vector lower;
    Vector upper;
};

/// span of the columns of basis (dim x k, stored orthonormalized).
struct Subspace {
    DenseMatrix basis;

    static Subspace spanned_by(const DenseMatrix& columns, std::size_t dim);
};

struct ZeroSet {
    std::size_t dim = 0;
};

struct FullSpace {
    std::size_t dim = 0;
};

/// {x : ineq x >= 0, eq x = 0}
struct HCone {
    std::size_t dim = 0;
    DenseMatrix ineq;
    DenseMatrix eq;
};

/// cone(generators)
struct VCone {
    std::size_t dim = 0;
    std::vector<Vector> generators;
};

struct ConeRepr;

/// Cartesian product in coordinate order.
struct Product {
    std::vector<ConeRepr> parts;
};

struct ConeRepr {
    std::variant<SignedOrthant, Box, Subspace, ZeroSet, FullSpace, HCone, VCone, Product> v;

    ConeRepr() : v(ZeroSet{}) {}
    template <class T>
    ConeRepr(T x) : v(std::move(x)) {}  // NOLINT(google-explicit-constructor)

    template <class T>
    const T* as() const { return std::get_if<T>(&v); }
};

std::size_t dim(const ConeRepr& c);
std::string kind_name(const ConeRepr& c);

/// True when the set is a cone (everything except a box with a nonzero finite bound).
bool is_cone(const ConeRepr& c);

/// Exact signed-orthant form of orthants, orthant-like boxes, {0}, R^n and
/// products of those; empty otherwise.
std::optional<SignedOrthant> as_signed_orthant(const ConeRepr& c);

/// Flattens orthant-like products and boxes into a SignedOrthant; other
/// variants are returned unchanged.
ConeRepr canonicalize(const ConeRepr& c);

ConeRepr dual_cone(const ConeRepr& c);
ConeRepr negate(const ConeRepr& c);

/// Linear description {x : G x <= h, E x = e}.
lp::HPolytope describe(const ConeRepr& c);

bool contains(const ConeRepr& c, std::span<const double> x, double tol = 1e-8);
bool in_relative_interior(const ConeRepr& c, std::span<const double> x, double tol = 1e-9);

/// Rays and lineality basis of a cone; the cone equals cone(rays) + span(lineality).
struct Generators {
    std::vector<Vector> rays;
    std::vector<Vector> lineality;
};
Generators generators(const ConeRepr& c);

/// Brute-force facet enumeration over subsets of generators.
HCone v_to_h(const VCone& c);
/// Brute-force extreme-ray enumeration; lineality appears as +/- pairs.
VCone h_to_v(const HCone& c);

/// H-description of {A x + s : x in orthant, s in L}.
ConeRepr image_plus_subspace(const DenseMatrix& a, const ConeRepr& orthant, const ConeRepr& l);

/// H-description of A(R) - S for cones R and S.
ConeRepr image_minus_cone(const DenseMatrix& a, const ConeRepr& r, const ConeRepr& s);

/// Mutual inclusion of generators, checked by LP within tol.
bool equivalent(const ConeRepr& a, const ConeRepr& b, double tol = 1e-8);

/// Same variant and same set; subspaces compare by orthogonal projector.
bool structurally_equal(const ConeRepr& a, const ConeRepr& b, double tol = 1e-9);

/// Euclidean projection of x onto the set.
Vector project(const ConeRepr& c, std::span<const double> x);

/// Distance from x to the set in the given norm.
double distance(const ConeRepr& c, std::span<const double> x, NormTag norm);

}  // namespace hoffman::cones
