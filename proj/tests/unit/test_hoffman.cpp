#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hoffman/constants.hpp"
#include "hoffman/error.hpp"
#include "hoffman/oracle.hpp"
#include "instances.hpp"

using namespace hoffman;
using mapping::NormPair;
using mapping::SolutionMap;

namespace {

const NormPair kLInf{NormTag::LInf, NormTag::LInf};
const NormPair kL1{NormTag::L1, NormTag::L1};

void expect_replays(const SolutionMap& m, const HoffmanReport& r) {
    ASSERT_FALSE(r.witness_b.empty());
    const auto rp = oracle::replay(m, r.witness_b, r.witness_x);
    ASSERT_TRUE(rp.feasible);
    EXPECT_NEAR(rp.ratio, r.value, 10 * r.tol);
}

}  // namespace

TEST(NormOfSublinear, IdentityOnEmptyTangent) {
    const SolutionMap m = gen::pa_map(DenseMatrix::identity(2), kLInf);
    const auto r = norm_of_sublinear(mapping::restrict_to_tangent(m, {}));
    EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(NormOfSublinear, LinearIdentityAnyNorm) {
    for (NormTag t : {NormTag::L1, NormTag::LInf}) {
        const SolutionMap m(DenseMatrix::identity(3), cones::FullSpace{3}, cones::ZeroSet{3}, {t, t});
        EXPECT_NEAR(norm_of_sublinear(m).value, 1.0, 1e-12);
    }
}

TEST(NormOfSublinear, RowOfOnes) {
    const SolutionMap m = gen::pa_map(DenseMatrix{{1, 1}}, kL1);
    EXPECT_NEAR(norm_of_sublinear(m).value, 1.0, 1e-12);
}

TEST(NormOfSublinear, ScaledRow) {
    // min ||x||_1 with 2 x1 + x2 = b, x >= 0 is |b| / 2 on b >= 0; dom is only the half-line.
    const SolutionMap m = gen::pa_map(DenseMatrix{{2, 1}}, kL1);
    EXPECT_NEAR(norm_of_sublinear(m).value, 0.5, 1e-12);
}

TEST(NormOfSublinear, RejectsEuclideanRhsNorm) {
    const SolutionMap m(DenseMatrix::identity(2), cones::SignedOrthant::nonneg(2), cones::ZeroSet{2},
                        {NormTag::L2, NormTag::L1});
    EXPECT_THROW(norm_of_sublinear(m), UnsupportedNormError);
}

TEST(HoffmanConstant, IdentityOnOrthant) {
    const SolutionMap m = gen::pa_map(DenseMatrix::identity(3), kLInf);
    const auto r = hoffman_constant(m);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    EXPECT_EQ(r.method, Method::maximal_slater_max);
    expect_replays(m, r);
}

TEST(HoffmanConstant, PrimalExampleUsesGeometricRoute) {
    const double th = std::numbers::pi / 12;
    const SolutionMap m = gen::pa_map(gen::primal_example(th), {NormTag::L2, NormTag::L1});
    const auto r = hoffman_constant(m);
    EXPECT_EQ(r.method, Method::geometric_inradius);
    EXPECT_NEAR(r.value, 1.0 / std::sin(std::numbers::pi / 4 - th / 2), 1e-9);
    EXPECT_NEAR(r.value, 1.6426796, 1e-7);
    expect_replays(m, r);
}

TEST(HoffmanConstant, DualExampleAdjointIsSqrtTwo) {
    const SolutionMap m = gen::pa_map(gen::dual_example(std::numbers::pi / 8), {NormTag::L2, NormTag::L1});
    const SolutionMap adj = mapping::adjoint(m);
    const auto r = hoffman_constant(adj);
    EXPECT_EQ(r.method, Method::cap_maximization);
    EXPECT_NEAR(r.value, std::sqrt(2.0), 1e-10);
    expect_replays(adj, r);
}

TEST(HoffmanConstant, SubspaceDomainRoute) {
    const SolutionMap m = gen::pa_map(DenseMatrix{{1, -1}}, kL1);
    const auto r = hoffman_constant(m);
    EXPECT_EQ(r.method, Method::subspace_norm);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    expect_replays(m, r);
}

TEST(HoffmanConstant, ForcedRoutesAgree) {
    const SolutionMap m = gen::pa_map(DenseMatrix{{1, -1, 2}, {0, 1, 1}}, kL1);
    const auto automatic = hoffman_constant(m);
    const auto slater = hoffman_constant(m, {}, Route::slater_max);
    EXPECT_NEAR(automatic.value, slater.value, 1e-10);
}

TEST(HoffmanConstant, ForcedSubspaceRouteNeedsSubspaceDomain) {
    const SolutionMap m = gen::pa_map(DenseMatrix::identity(2), kL1);
    EXPECT_THROW(hoffman_constant(m, {}, Route::subspace), DomainError);
}

TEST(HoffmanConstant, UnsupportedEuclideanCombination) {
    const SolutionMap m(DenseMatrix{{1, 2}}, cones::SignedOrthant::nonneg(2), cones::ZeroSet{1},
                        {NormTag::L2, NormTag::L2});
    EXPECT_THROW(hoffman_constant(m), UnsupportedNormError);
}

TEST(HoffmanConstant, ThreadCountDoesNotChangeTheResult) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const SolutionMap m = gen::random_conic_map(rng);
        const auto a = hoffman_constant(m, {1e-9, 1});
        const auto b = hoffman_constant(m, {1e-9, 4});
        EXPECT_EQ(a.value, b.value);
        EXPECT_EQ(a.attaining_index, b.attaining_index);
        EXPECT_EQ(a.witness_b, b.witness_b);
    }
}

TEST(HoffmanConstant, RandomInstancesReplayAndDominateOracle) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 25; ++trial) {
        const SolutionMap m = gen::random_conic_map(rng);
        const auto r = hoffman_constant(m);
        oracle::SamplerConfig cfg;
        cfg.trials = 300;
        cfg.seed = static_cast<std::uint64_t>(trial);
        const auto lb = oracle::hoffman_lower_bound(m, cfg);
        if (r.infinite) continue;
        EXPECT_LE(lb.value, r.value + 1e-7) << "trial " << trial;
        if (!r.witness_b.empty()) expect_replays(m, r);
    }
}

TEST(AttachWitness, BoxWitnessReplays) {
    const SolutionMap m(DenseMatrix{{1, 2, -1}, {0, 1, 1}}, cones::Box{{-1, -2, 0}, {1, 3, 2}}, cones::ZeroSet{2},
                        {NormTag::LInf, NormTag::L1});
    const auto r = hoffman_constant(m);
    EXPECT_EQ(r.method, Method::box_signature);
    expect_replays(m, r);
}

TEST(MethodNames, Strings) {
    EXPECT_EQ(to_string(Method::subspace_norm), "subspace-norm");
    EXPECT_EQ(to_string(Method::cap_maximization), "cap-maximization");
    EXPECT_EQ(parse_route("slater-max"), Route::slater_max);
    EXPECT_THROW(parse_route("fastest"), InputError);
}
