#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hoffman/error.hpp"
#include "hoffman/oracle.hpp"
#include "instances.hpp"

using namespace hoffman;
using mapping::NormPair;
using mapping::SolutionMap;

namespace {
const NormPair kL2L1{NormTag::L2, NormTag::L1};
}

TEST(Distance, IdentityOrthant) {
    const SolutionMap m = gen::pa_map(DenseMatrix::identity(2), {NormTag::L1, NormTag::L1});
    const auto d = oracle::distance_to_solution_set(m, Vector{0, 0}, Vector{1, 2});
    ASSERT_TRUE(d.feasible);
    EXPECT_NEAR(d.value, 3.0, 1e-12);
    EXPECT_NEAR(d.nearest[1], 2.0, 1e-12);
}

TEST(Distance, InfeasibleRhs) {
    const SolutionMap m = gen::pa_map(DenseMatrix::identity(2), {NormTag::L1, NormTag::L1});
    EXPECT_FALSE(oracle::distance_to_solution_set(m, Vector{0, 0}, Vector{-1, 2}).feasible);
}

TEST(Distance, EuclideanNearestPoint) {
    const SolutionMap m = gen::pa_map(DenseMatrix{{1, 1}}, {NormTag::L1, NormTag::L2});
    const auto d = oracle::distance_to_solution_set(m, Vector{0, 0}, Vector{2});
    ASSERT_TRUE(d.feasible);
    EXPECT_NEAR(d.value, std::sqrt(2.0), 1e-8);
}

TEST(Violation, OrthantAndZero) {
    const SolutionMap m = gen::pa_map(DenseMatrix::identity(2), {NormTag::LInf, NormTag::L1});
    EXPECT_NEAR(oracle::violation(m, Vector{3, -1}, Vector{1, 1}), 2.0, 1e-12);
}

TEST(Replay, IdentityRatioIsOne) {
    const SolutionMap m = gen::pa_map(DenseMatrix::identity(3), {NormTag::LInf, NormTag::LInf});
    const auto r = oracle::replay(m, Vector{1, 0, 2}, Vector{-1, 0.5, 0});
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(r.ratio, 1.0, 1e-12);
}

TEST(Replay, ZeroViolationGivesZeroRatio) {
    const SolutionMap m = gen::pa_map(DenseMatrix::identity(2), {NormTag::L1, NormTag::L1});
    const auto r = oracle::replay(m, Vector{1, 1}, Vector{1, 1});
    EXPECT_EQ(r.ratio, 0.0);
}

TEST(KnownWitnesses, DualExample) {
    const double th = std::numbers::pi / 12;
    const SolutionMap m = gen::pa_map(gen::dual_example(th), kL2L1);
    const auto w = oracle::known_witnesses(m);
    ASSERT_FALSE(w.empty());
    const auto r = oracle::replay(m, w[0].b, w[0].x);
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(r.distance, 2.0, 1e-9);
    EXPECT_NEAR(r.violation, std::sin(th), 1e-12);
    EXPECT_NEAR(r.ratio, 2 / std::sin(th), 1e-8);
}

TEST(KnownWitnesses, AdjointOfPrimalExample) {
    const double th = std::numbers::pi / 12;
    const SolutionMap adj = mapping::adjoint(gen::pa_map(gen::primal_example(th), kL2L1));
    const auto w = oracle::known_witnesses(adj);
    ASSERT_FALSE(w.empty());
    EXPECT_NEAR(oracle::replay(adj, w[0].b, w[0].x).ratio, 1 / std::sin(th), 1e-8);
}

TEST(KnownWitnesses, NoneForOtherMatrices) {
    EXPECT_TRUE(oracle::known_witnesses(gen::pa_map(DenseMatrix::identity(2), kL2L1)).empty());
}

TEST(LowerBound, IdentityIsOne) {
    oracle::SamplerConfig cfg;
    cfg.trials = 300;
    const auto lb = oracle::hoffman_lower_bound(gen::pa_map(DenseMatrix::identity(2), {NormTag::L1, NormTag::L1}), cfg);
    EXPECT_NEAR(lb.value, 1.0, 1e-9);
    EXPECT_EQ(lb.source, "sample");
    EXPECT_GT(lb.evaluated, 0);
}

TEST(LowerBound, InjectsDualWitness) {
    const double th = std::numbers::pi / 8;
    oracle::SamplerConfig cfg;
    cfg.trials = 100;
    const auto lb = oracle::hoffman_lower_bound(gen::pa_map(gen::dual_example(th), kL2L1), cfg);
    EXPECT_GE(lb.value, 2 / std::sin(th) - 1e-6);
}

TEST(LowerBound, TrajectoryIsMonotone) {
    oracle::SamplerConfig cfg;
    cfg.trials = 200;
    const auto lb = oracle::hoffman_lower_bound(
        gen::pa_map(gen::primal_example(std::numbers::pi / 12), kL2L1), cfg);
    ASSERT_FALSE(lb.trajectory.empty());
    for (std::size_t i = 1; i < lb.trajectory.size(); ++i) EXPECT_GE(lb.trajectory[i], lb.trajectory[i - 1]);
    EXPECT_EQ(lb.trajectory.back(), lb.value);
}

TEST(LowerBound, DeterministicAcrossThreadCounts) {
    const SolutionMap m = gen::pa_map(DenseMatrix{{1, -2, 0.5}, {0, 1, 1}}, {NormTag::LInf, NormTag::L1});
    oracle::SamplerConfig one;
    one.trials = 300;
    one.threads = 1;
    oracle::SamplerConfig four = one;
    four.threads = 4;
    const auto a = oracle::hoffman_lower_bound(m, one);
    const auto b = oracle::hoffman_lower_bound(m, four);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.b, b.b);
}

TEST(GridBound, PrimalExampleTangentNorm) {
    const double th = std::numbers::pi / 12;
    const SolutionMap m = gen::pa_map(gen::primal_example(th), kL2L1);
    const double grid = oracle::norm_lower_bound_grid(m, 10000);
    EXPECT_NEAR(grid, 1 / std::sin(std::numbers::pi / 4 - th / 2), 1e-3);
}
