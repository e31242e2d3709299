#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hoffman/constants.hpp"
#include "hoffman/error.hpp"
#include "instances.hpp"

using namespace hoffman;
using mapping::NormPair;
using mapping::SolutionMap;

namespace {
const NormPair kL2L1{NormTag::L2, NormTag::L1};
}

TEST(Duality, PrimalExample) {
    const double th = std::numbers::pi / 12;
    const auto r = verify_duality(gen::pa_map(gen::primal_example(th), kL2L1), {}, 500);
    EXPECT_EQ(r.side, "primal");
    EXPECT_EQ(r.status, CheckStatus::pass);
    EXPECT_NEAR(r.lhs, 1.6426796, 1e-7);
    EXPECT_GE(r.rhs, 1 / std::sin(th) - 1e-7);
    EXPECT_GE(r.slack, 2.2);
}

TEST(Duality, DualExample) {
    const double th = std::numbers::pi / 12;
    const auto r = verify_duality(gen::pa_map(gen::dual_example(th), kL2L1), {}, 500);
    EXPECT_EQ(r.side, "dual");
    EXPECT_EQ(r.status, CheckStatus::pass);
    EXPECT_NEAR(r.rhs, std::sqrt(2.0), 1e-9);
    EXPECT_GE(r.lhs, 2 / std::sin(th) - 1e-6);
}

TEST(Duality, DifferenceRowBothSidesExact) {
    const auto r = verify_duality(gen::pa_map(DenseMatrix{{1, -1}}, {NormTag::L1, NormTag::L1}));
    EXPECT_EQ(r.side, "primal");
    EXPECT_TRUE(r.lhs_exact);
    EXPECT_TRUE(r.rhs_exact);
    EXPECT_EQ(r.status, CheckStatus::pass);
    EXPECT_GE(r.slack, -1e-7);
}

TEST(Duality, RandomPolyhedralInstances) {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 30; ++trial) {
        const SolutionMap m = gen::random_conic_map(rng);
        const auto r = verify_duality(m, {}, 200, static_cast<std::uint64_t>(trial));
        if (r.side == "neither") {
            EXPECT_EQ(r.status, CheckStatus::unknown);
            continue;
        }
        EXPECT_NE(r.status, CheckStatus::fail) << "trial " << trial << " lhs " << r.lhs << " rhs " << r.rhs;
        EXPECT_GE(r.slack, -1e-7);
    }
}

TEST(BoxDuality, OneByOne) {
    const auto r = verify_box_duality(DenseMatrix{{1}}, cones::Box{{-1}, {1}}, cones::ZeroSet{1},
                                      {NormTag::LInf, NormTag::LInf});
    EXPECT_EQ(r.status, CheckStatus::pass);
    EXPECT_NEAR(r.lhs, 1.0, 1e-12);
    EXPECT_NEAR(r.rhs, 1.0, 1e-12);
}

TEST(BoxDuality, RandomInstancesAreEqual) {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t m = gen::pick(rng, 1, 3), n = gen::pick(rng, 1, 4);
        const DenseMatrix a = gen::random_matrix(rng, m, n);
        const cones::ConeRepr l = gen::random_subspace(rng, m, gen::pick(rng, 0, m));
        const NormPair norms{gen::random_polyhedral(rng), gen::random_polyhedral(rng)};
        const auto r = verify_box_duality(a, cones::Box{Vector(n, -1.0), Vector(n, 1.0)}, l, norms);
        EXPECT_TRUE(r.lhs_exact);
        EXPECT_TRUE(r.rhs_exact);
        EXPECT_EQ(r.status, CheckStatus::pass) << "trial " << trial << " lhs " << r.lhs << " rhs " << r.rhs;
    }
}

TEST(ChiIdentity, Identity) {
    const auto r = verify_chi_identity(DenseMatrix::identity(2), {}, 1e-7, 300);
    EXPECT_EQ(r.status, CheckStatus::pass);
    EXPECT_NEAR(r.chi, 1.0, 1e-12);
    EXPECT_NEAR(r.chibar, 1.0, 1e-12);
    EXPECT_NEAR(r.dual_box, 1.0, 1e-9);
}

TEST(ChiIdentity, GoldenMatrix) {
    const auto r = verify_chi_identity(DenseMatrix{{1, 0, 1}, {0, 1, 1}}, {}, 1e-7, 300);
    EXPECT_EQ(r.status, CheckStatus::pass);
    EXPECT_NEAR(r.chi, (1 + std::sqrt(5.0)) / 2, 1e-8);
    EXPECT_NEAR(r.dual_box, r.chi, 1e-8);
    EXPECT_NEAR(r.dual_box_kernel, r.chibar, 1e-8);
    EXPECT_LE(r.primal_box_oracle, r.chi + 1e-6);
    EXPECT_LE(r.primal_kernel_oracle, r.chibar + 1e-6);
    EXPECT_EQ(r.checks.size(), 4u);
}

TEST(ChiIdentity, RankDeficientIsRankError) {
    EXPECT_THROW(verify_chi_identity(DenseMatrix{{1, 1}, {2, 2}}), RankError);
}

TEST(Monotonicity, DifferenceRowAllPatterns) {
    const SolutionMap m = gen::pa_map(DenseMatrix{{1, -1}}, {NormTag::L1, NormTag::L1});
    const double h = hoffman_constant(m).value;
    int checked = 0;
    for (int s0 = 0; s0 < 3; ++s0) {
        for (int s1 = 0; s1 < 3; ++s1) {
            // 0: coordinate kept free, 1: nonneg, 2: nonpos; the tangent of R^2_+ only admits free or nonneg.
            std::vector<cones::Sign> signs;
            for (int s : {s0, s1})
                signs.push_back(s == 0 ? cones::Sign::Free : s == 1 ? cones::Sign::Nonneg : cones::Sign::Nonpos);
            const SolutionMap t(m.a(), cones::SignedOrthant{signs}, m.s(), m.norms());
            const auto ht = hoffman_constant(t);
            if (s0 != 2 && s1 != 2) EXPECT_LE(ht.value, h + 1e-7);
            ++checked;
        }
    }
    EXPECT_EQ(checked, 9);
    const auto r = tangent_monotonicity_check(m, 64);
    EXPECT_EQ(r.status, CheckStatus::pass);
    EXPECT_LE(r.worst_excess, 1e-7);
}

TEST(Monotonicity, FullIndexGivesEquality) {
    const SolutionMap m = gen::pa_map(DenseMatrix{{1, 2, -1}}, {NormTag::L1, NormTag::LInf});
    const auto t = mapping::restrict_to_tangent(m, mapping::TangentIndex{{0, 1, 2}, {}, {}, {}});
    EXPECT_NEAR(hoffman_constant(t).value, hoffman_constant(m).value, 1e-12);
}

TEST(Monotonicity, IdentityTangentsAllOne) {
    const auto r = tangent_monotonicity_check(gen::pa_map(DenseMatrix::identity(2), {NormTag::L1, NormTag::L1}), 64);
    EXPECT_EQ(r.status, CheckStatus::pass);
    for (const auto& [t, v] : r.tangent_values) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Monotonicity, RandomInstances) {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 15; ++trial) {
        const auto r = tangent_monotonicity_check(gen::random_conic_map(rng, 2, 4), 32);
        EXPECT_EQ(r.status, CheckStatus::pass) << "trial " << trial << " excess " << r.worst_excess;
    }
}

TEST(StatusNames, Strings) {
    EXPECT_EQ(to_string(CheckStatus::pass), "pass");
    EXPECT_EQ(to_string(CheckStatus::fail), "fail");
    EXPECT_EQ(to_string(CheckStatus::unknown), "unknown");
}
