#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "hoffman/constants.hpp"
#include "hoffman/error.hpp"
#include "hoffman/mapping.hpp"
#include "hoffman/oracle.hpp"
#include "instances.hpp"

using namespace hoffman;
using namespace hoffman::mapping;
using cones::Sign;

namespace {

const NormPair kL1{NormTag::L1, NormTag::L1};

bool is_subset(const IndexSet& a, const IndexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool index_subset(const TangentIndex& a, const TangentIndex& b) {
    return is_subset(a.x_nonneg, b.x_nonneg) && is_subset(a.x_nonpos, b.x_nonpos) &&
           is_subset(a.s_nonneg, b.s_nonneg) && is_subset(a.s_nonpos, b.s_nonpos);
}

}  // namespace

TEST(SolutionMap, RejectsInconsistentInput) {
    EXPECT_THROW(SolutionMap(DenseMatrix{{1, 2}}, cones::SignedOrthant::nonneg(3), cones::ZeroSet{1}, kL1),
                 InputError);
    EXPECT_THROW(SolutionMap(DenseMatrix{{1, NAN}}, cones::FullSpace{2}, cones::ZeroSet{1}, kL1), InputError);
    EXPECT_THROW(SolutionMap(DenseMatrix{{1}}, cones::Box{{1}, {0}}, cones::ZeroSet{1}, kL1), DomainError);
}

TEST(NormPair, DualizedRoundTrip) {
    const NormPair p{NormTag::L2, NormTag::L1};
    EXPECT_EQ(p.dualized(), (NormPair{NormTag::LInf, NormTag::L2}));
    EXPECT_EQ(p.dualized().dualized(), p);
}

TEST(Adjoint, OfPA) {
    const DenseMatrix a{{1, 2, 3}, {4, 5, 6}};
    const SolutionMap adj = adjoint(gen::pa_map(a, {NormTag::L2, NormTag::L1}));
    EXPECT_EQ(adj.a(), a.transpose());
    EXPECT_TRUE(cones::structurally_equal(adj.r(), cones::FullSpace{2}));
    EXPECT_TRUE(cones::structurally_equal(adj.s(), cones::SignedOrthant::nonpos(3)));
    EXPECT_EQ(adj.norms(), (NormPair{NormTag::LInf, NormTag::L2}));
}

TEST(Adjoint, RejectsBox) {
    const SolutionMap m(DenseMatrix{{1}}, cones::Box{{-1}, {1}}, cones::ZeroSet{1}, kL1);
    EXPECT_THROW(adjoint(m), DomainError);
}

TEST(Adjoint, DoubleAdjointNegatesTheCones) {
    const cones::ConeRepr l = cones::Subspace::spanned_by(DenseMatrix{{1}, {2}}, 2);
    const SolutionMap m(DenseMatrix{{1, 0, 2}, {0, 1, 1}}, cones::SignedOrthant::nonneg(3), l,
                        {NormTag::L1, NormTag::L2});
    const SolutionMap twice = adjoint(adjoint(m));
    EXPECT_EQ(twice.a(), m.a());
    EXPECT_EQ(twice.norms(), m.norms());
    EXPECT_TRUE(cones::structurally_equal(twice.r(), cones::SignedOrthant::nonpos(3)));
    EXPECT_TRUE(cones::structurally_equal(twice.s(), l));
}

TEST(Adjoint, InvolutionForSymmetricCones) {
    const cones::ConeRepr l = cones::Subspace::spanned_by(DenseMatrix{{1}, {2}}, 2);
    const SolutionMap m(DenseMatrix{{1, 0, 2}, {0, 1, 1}}, cones::FullSpace{3}, l, {NormTag::L1, NormTag::LInf});
    const SolutionMap twice = adjoint(adjoint(m));
    EXPECT_TRUE(cones::structurally_equal(twice.r(), m.r()));
    EXPECT_TRUE(cones::structurally_equal(twice.s(), m.s()));
    EXPECT_EQ(twice.norms(), m.norms());
}

TEST(Adjoint, DoubleAdjointKeepsTheHoffmanConstant) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const SolutionMap m = gen::random_conic_map(rng, 2, 4);
        const auto h1 = hoffman_constant(m);
        const auto h2 = hoffman_constant(adjoint(adjoint(m)));
        ASSERT_EQ(h1.infinite, h2.infinite);
        if (!h1.infinite) EXPECT_NEAR(h1.value, h2.value, 1e-9 * std::max(1.0, h1.value));
    }
}

TEST(TangentSlaterSets, DifferenceMap) {
    const auto sets = tangent_slater_sets(gen::pa_map(DenseMatrix{{1, -1}}, kL1));
    ASSERT_EQ(sets.size(), 1u);
    EXPECT_EQ(sets[0].x_nonneg, (IndexSet{0, 1}));
}

TEST(TangentSlaterSets, IdentityHasOnlyTheEmptySet) {
    const auto sets = tangent_slater_sets(gen::pa_map(DenseMatrix::identity(2), kL1));
    ASSERT_EQ(sets.size(), 1u);
    EXPECT_EQ(sets[0].size(), 0u);
}

TEST(TangentSlaterSets, DualFormOfRowMatrix) {
    const SolutionMap adj = adjoint(gen::pa_map(DenseMatrix{{1, 1}}, kL1));
    const auto sets = tangent_slater_sets(adj);
    ASSERT_EQ(sets.size(), 1u);
    EXPECT_EQ(sets[0].s_nonpos, (IndexSet{0, 1}));
    EXPECT_EQ(sets[0].side(), "dual");
}

TEST(TangentSlaterSets, MaximalAndSelfConsistent) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const SolutionMap m = gen::random_conic_map(rng);
        const auto sets = tangent_slater_sets(m);
        ASSERT_FALSE(sets.empty());
        for (std::size_t i = 0; i < sets.size(); ++i) {
            EXPECT_TRUE(slater(m, sets[i]).holds);
            for (std::size_t j = 0; j < sets.size(); ++j)
                if (i != j) EXPECT_FALSE(index_subset(sets[i], sets[j]));
            if (i > 0) EXPECT_FALSE(canonical_less(sets[i], sets[i - 1]));
        }
    }
}

TEST(RestrictToTangent, BoxInteriorPointFreesEverything) {
    const SolutionMap m(DenseMatrix{{1, 1}}, cones::Box{{-1, -1}, {1, 1}}, cones::ZeroSet{1}, kL1);
    const SolutionMap t = restrict_to_tangent(m, TangentIndex{});
    const auto o = cones::as_signed_orthant(t.r());
    ASSERT_TRUE(o);
    EXPECT_EQ(o->signs, (std::vector<Sign>{Sign::Free, Sign::Free}));
}

TEST(RestrictToTangent, FullIndexKeepsTheOrthant) {
    const SolutionMap m = gen::pa_map(DenseMatrix{{1, 2, 3}}, kL1);
    const SolutionMap t = restrict_to_tangent(m, TangentIndex{{0, 1, 2}, {}, {}, {}});
    EXPECT_TRUE(cones::structurally_equal(t.r(), cones::SignedOrthant::nonneg(3)));
}

TEST(RestrictToTangent, BoxVertexGivesSignedOrthant) {
    const SolutionMap m(DenseMatrix{{1, 1, 1}}, cones::Box{{-1, -1, -1}, {1, 1, 1}}, cones::ZeroSet{1}, kL1);
    const SolutionMap t = restrict_to_tangent(m, TangentIndex{{0, 2}, {1}, {}, {}});
    EXPECT_TRUE(cones::structurally_equal(t.r(), cones::SignedOrthant::from_sets(3, {0, 2}, {1})));
}

TEST(RestrictToTangent, RejectsInconsistentSets) {
    const SolutionMap m = gen::pa_map(DenseMatrix{{1, 2}}, kL1);
    EXPECT_THROW(restrict_to_tangent(m, TangentIndex{{0}, {0}, {}, {}}), DomainError);
    EXPECT_THROW(restrict_to_tangent(m, TangentIndex{{5}, {}, {}, {}}), DomainError);
}

TEST(DomIsSubspace, PrimalExample) {
    const auto d = dom_is_subspace(gen::pa_map(gen::primal_example(std::numbers::pi / 12), kL1));
    EXPECT_TRUE(d.is_subspace);
    EXPECT_EQ(d.basis.cols(), 2u);
}

TEST(DomIsSubspace, IdentityOnOrthant) {
    EXPECT_FALSE(dom_is_subspace(gen::pa_map(DenseMatrix::identity(2), kL1)).is_subspace);
}

TEST(DomIsSubspace, SubspacesGiveSubspaces) {
    const cones::ConeRepr l = cones::Subspace::spanned_by(DenseMatrix{{0}, {0}, {1}}, 3);
    const SolutionMap m(DenseMatrix{{1, 2}, {0, 1}, {1, 1}}, cones::FullSpace{2}, l, kL1);
    const auto d = dom_is_subspace(m);
    EXPECT_TRUE(d.is_subspace);
    EXPECT_EQ(d.basis.cols(), 3u);
}

TEST(AllTangentIndices, CountsStates) {
    const SolutionMap m(DenseMatrix{{1, 1}}, cones::Box{{-1, 0}, {1, lp::kInf}}, cones::SignedOrthant::nonneg(1),
                        kL1);
    // Coordinate 0 has three states, coordinate 1 two, the S slot two.
    EXPECT_EQ(all_tangent_indices(m).size(), 12u);
}

TEST(Membership, SolverPointsAreFeasible) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const SolutionMap m = gen::random_conic_map(rng);
        const Vector r = cones::project(m.r(), gen::random_matrix(rng, m.n(), 1).column(0));
        const Vector s = cones::project(m.s(), gen::random_matrix(rng, m.m(), 1).column(0));
        Vector b = linalg::multiply(m.a(), r);
        for (std::size_t i = 0; i < b.size(); ++i) b[i] -= s[i];
        const auto d = oracle::distance_to_solution_set(m, Vector(m.n(), 0.0), b);
        ASSERT_TRUE(d.feasible);
        EXPECT_TRUE(cones::contains(m.r(), d.nearest, 1e-8));
        Vector res = linalg::multiply(m.a(), d.nearest);
        for (std::size_t i = 0; i < res.size(); ++i) res[i] -= b[i];
        EXPECT_TRUE(cones::contains(m.s(), res, 1e-8));
    }
}
