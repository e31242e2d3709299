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

const double kGolden = (1 + std::sqrt(5.0)) / 2;
const DenseMatrix kGoldenA{{1, 0, 1}, {0, 1, 1}};

double primal_formula(double th) { return 1.0 / std::sin(std::numbers::pi / 4 - th / 2); }

DenseMatrix scale_columns(const DenseMatrix& a, const std::vector<int>& sig) {
    DenseMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= sig[j];
    return out;
}

}  // namespace

TEST(Geometric, PrimalExampleAtThreeAngles) {
    for (double th : {std::numbers::pi / 12, std::numbers::pi / 8, std::numbers::pi / 7}) {
        const auto r = hoffman_PA_geometric(gen::primal_example(th));
        EXPECT_NEAR(r.value, primal_formula(th), 1e-9) << th;
    }
    EXPECT_NEAR(hoffman_PA_geometric(gen::primal_example(std::numbers::pi / 8)).value, 1.7999524463, 1e-9);
}

TEST(Geometric, DifferenceRow) {
    const auto r = hoffman_PA_geometric(DenseMatrix{{1, -1}});
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    EXPECT_FALSE(r.infinite);
}

TEST(Geometric, TangentNormMatchesGridOracle) {
    const SolutionMap m =
        gen::pa_map(gen::primal_example(std::numbers::pi / 12), NormPair{NormTag::L2, NormTag::L1});
    const auto exact = geometric_tangent_norm(m);
    const double grid = oracle::norm_lower_bound_grid(m, 10000);
    EXPECT_LE(grid, exact.value + 1e-9);
    EXPECT_NEAR(grid, exact.value, 1e-3);
}

TEST(Cap, IdentityEuclidean) {
    const auto c = max_norm_over_cap(DenseMatrix::identity(2), NormTag::L2);
    EXPECT_NEAR(c.value, 1.0, 1e-12);
    EXPECT_NEAR(linalg::norm2(c.x), 1.0, 1e-12);
}

TEST(Cap, IdentityManhattan) {
    const auto c = max_norm_over_cap(DenseMatrix::identity(2), NormTag::L1);
    EXPECT_NEAR(c.value, std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(c.x[0], 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(c.x[1], 1 / std::sqrt(2.0), 1e-12);
}

TEST(Cap, DualExampleBasis) {
    // Columns 2 and 3 of the dual example matrix.
    EXPECT_NEAR(max_norm_over_cap(DenseMatrix{{0, 1}, {1, 0}}, NormTag::L1).value, std::sqrt(2.0), 1e-12);
}

TEST(Cap, WitnessIsFeasibleAndAttains) {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        const DenseMatrix b = gen::random_full_row_rank(rng, 3, 3);
        for (NormTag p : {NormTag::L1, NormTag::L2}) {
            const auto c = max_norm_over_cap(b, p);
            for (double xi : c.x) EXPECT_GE(xi, -1e-10);
            EXPECT_LE(linalg::norm2(linalg::multiply(b, c.x)), 1 + 1e-9);
            EXPECT_NEAR(norm(p, c.x), c.value, 1e-9 * c.value);
        }
    }
}

TEST(Cap, RejectsRankDeficient) {
    EXPECT_THROW(max_norm_over_cap(DenseMatrix{{1, 1}, {1, 1}}, NormTag::L2), DomainError);
}

TEST(PAStar, DualExample) {
    const auto r = hoffman_PA_star(gen::dual_example(std::numbers::pi / 12), NormTag::L1);
    EXPECT_NEAR(r.value, std::sqrt(2.0), 1e-10);
    EXPECT_EQ(r.method, Method::cap_maximization);
}

TEST(PAStar, Identity) {
    EXPECT_NEAR(hoffman_PA_star(DenseMatrix::identity(2), NormTag::L2).value, 1.0, 1e-12);
}

TEST(PAStar, GoldenMatrixHasSignRestrictedValue) {
    // The golden-ratio singular vector of the {1,3} basis has mixed signs, so the cap maximum stays at 1.
    EXPECT_NEAR(hoffman_PA_star(kGoldenA, NormTag::L2).value, 1.0, 1e-10);
}

TEST(PAStar, NoBasisIsRankError) {
    EXPECT_THROW(hoffman_PA_star(DenseMatrix{{1, 2}, {2, 4}}, NormTag::L2), RankError);
}

TEST(Chi, Examples) {
    EXPECT_NEAR(chi(DenseMatrix::identity(3)).value, 1.0, 1e-12);
    EXPECT_NEAR(chi(DenseMatrix{{2, 0}, {0, 1}}).value, 1.0, 1e-12);
    const auto g = chi(kGoldenA);
    EXPECT_NEAR(g.value, kGolden, 1e-10);
    EXPECT_EQ(g.method, Method::chi_basis);
    EXPECT_EQ(g.basis.size(), 2u);
}

TEST(Chi, RankError) { EXPECT_THROW(chi(DenseMatrix{{1, 1}, {2, 2}}), RankError); }

TEST(Chi, EqualsMaxOverSignaturesOfPAStar) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t m = gen::pick(rng, 1, 2), n = gen::pick(rng, m, 4);
        const DenseMatrix a = gen::random_full_row_rank(rng, m, n);
        double best = 0.0;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> sig(n);
            for (std::size_t j = 0; j < n; ++j) sig[j] = (mask >> j) & 1u ? -1 : 1;
            best = std::max(best, hoffman_PA_star(scale_columns(a, sig), NormTag::L2).value);
        }
        EXPECT_NEAR(best, chi(a).value, 1e-7);
    }
}

TEST(Chibar, Examples) {
    EXPECT_NEAR(chibar(DenseMatrix{{2, 0}, {0, 3}}).value, 1.0, 1e-12);
    EXPECT_NEAR(chibar(kGoldenA).value, std::sqrt(3.0), 1e-9);
    const DenseMatrix q = linalg::orthonormalize_rows(kGoldenA);
    EXPECT_NEAR(chibar(q).value, chi(q).value, 1e-9);
}

TEST(Chibar, InvariantUnderRowMixing) {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 10; ++trial) {
        const DenseMatrix a = gen::random_full_row_rank(rng, 2, 4);
        const DenseMatrix mix = gen::random_full_row_rank(rng, 2, 2);
        EXPECT_NEAR(chibar(mix * a).value, chibar(a).value, 1e-7);
    }
}

TEST(Box, OneByOne) {
    const auto r = hoffman_box(DenseMatrix{{1}}, cones::Box{{-1}, {1}}, cones::ZeroSet{1},
                               NormPair{NormTag::LInf, NormTag::LInf});
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    EXPECT_EQ(r.method, Method::box_signature);
}

TEST(Box, BoundsDoNotMatter) {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t m = gen::pick(rng, 1, 2), n = gen::pick(rng, 1, 4);
        const DenseMatrix a = gen::random_matrix(rng, m, n);
        const cones::ConeRepr l = gen::random_subspace(rng, m, gen::pick(rng, 0, m));
        const NormPair norms{gen::random_polyhedral(rng), gen::random_polyhedral(rng)};
        const auto r1 = hoffman_box(a, cones::Box{Vector(n, -1.0), Vector(n, 1.0)}, l, norms);
        const auto r2 = hoffman_box(a, cones::Box{Vector(n, -2.0), Vector(n, 3.0)}, l, norms);
        EXPECT_EQ(r1.value, r2.value);
        EXPECT_EQ(r1.signature, r2.signature);
    }
}

TEST(Box, UnboundedIsDomainError) {
    EXPECT_THROW(hoffman_box(DenseMatrix{{1, 1}}, cones::Box{{-1, 0}, {1, lp::kInf}}, cones::ZeroSet{1},
                             NormPair{NormTag::L1, NormTag::L1}),
                 DomainError);
}

TEST(Box, WitnessReplaysAndDominatesOracle) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const DenseMatrix a = gen::random_matrix(rng, 2, 3);
        const cones::Box box{Vector(3, -1.0), Vector(3, 1.0)};
        const NormPair norms{NormTag::L1, NormTag::LInf};
        const auto r = hoffman_box(a, box, cones::ZeroSet{2}, norms);
        const SolutionMap m(a, box, cones::ZeroSet{2}, norms);
        const auto rp = oracle::replay(m, r.witness_b, r.witness_x);
        ASSERT_TRUE(rp.feasible);
        EXPECT_NEAR(rp.ratio, r.value, 1e-8 * std::max(1.0, r.value));
        oracle::SamplerConfig cfg;
        cfg.trials = 200;
        EXPECT_LE(oracle::hoffman_lower_bound(m, cfg).value, r.value + 1e-7);
    }
}

TEST(ChiLowerBound, Identity) {
    const auto lb = chi_lower_bound_random(DenseMatrix::identity(3), 50, 3);
    EXPECT_NEAR(lb.value, 1.0, 1e-9);
}

TEST(ChiLowerBound, SingleTrialIsPseudoinverseNorm) {
    const DenseMatrix a = kGoldenA;
    const auto lb = chi_lower_bound_random(a, 1, 7);
    const double expected = 1.0 / linalg::sigma_min(a);
    EXPECT_NEAR(lb.value, expected, 1e-10);
}

TEST(ChiLowerBound, BoundedByChiAndApproachesIt) {
    const auto lb = chi_lower_bound_random(kGoldenA, 1000, 11);
    EXPECT_LE(lb.value, kGolden + 1e-7);
    EXPECT_GE(lb.value, 1.6);
}

TEST(ChiLowerBound, DeterministicForSeed) {
    const auto a = chi_lower_bound_random(kGoldenA, 200, 5);
    const auto b = chi_lower_bound_random(kGoldenA, 200, 5);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.best_d, b.best_d);
}
