#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "hoffman/constants.hpp"
#include "hoffman/lp.hpp"
#include "hoffman/oracle.hpp"
#include "instances.hpp"

using namespace hoffman;

static void BM_GeometricRoute(benchmark::State& state) {
    const DenseMatrix a = gen::primal_example(std::numbers::pi / 12);
    for (auto _ : state) benchmark::DoNotOptimize(hoffman_PA_geometric(a).value);
}
BENCHMARK(BM_GeometricRoute);

// Basis enumeration grows as C(n, m); the argument is n with m = 3.
static void BM_Chi(benchmark::State& state) {
    std::mt19937_64 rng(5);
    const DenseMatrix a = gen::random_full_row_rank(rng, 3, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(chi(a).value);
}
BENCHMARK(BM_Chi)->DenseRange(4, 10, 2);

static void BM_BoxRoute(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const auto n = static_cast<std::size_t>(state.range(0));
    const DenseMatrix a = gen::random_matrix(rng, 2, n);
    const cones::Box box{Vector(n, -1.0), Vector(n, 1.0)};
    const cones::ConeRepr l = cones::ZeroSet{2};
    for (auto _ : state)
        benchmark::DoNotOptimize(hoffman_box(a, box, l, {NormTag::L1, NormTag::LInf}).value);
}
BENCHMARK(BM_BoxRoute)->DenseRange(2, 5);

static void BM_OracleSampler(benchmark::State& state) {
    const auto m = gen::pa_map(gen::primal_example(std::numbers::pi / 12), {NormTag::L2, NormTag::L1});
    oracle::SamplerConfig cfg;
    cfg.trials = static_cast<int>(state.range(0));
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(oracle::hoffman_lower_bound(m, cfg).value);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OracleSampler)->Arg(100)->Arg(1000);

static void BM_MinL2Point(benchmark::State& state) {
    std::mt19937_64 rng(11);
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uniform_real_distribution<double> u(0.5, 2.0);
    lp::HPolytope set(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vector lo(n, 0.0), hi(n, 0.0);
        lo[i] = -1;
        hi[i] = 1;
        set.add_ineq(lo, -u(rng));
        set.add_ineq(hi, 3.0);
    }
    const DenseMatrix eq = gen::random_matrix(rng, 1, n);
    set.add_eq(eq.row(0), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(lp::min_l2_point(set).value);
}
BENCHMARK(BM_MinL2Point)->DenseRange(4, 12, 4);
BENCHMARK_MAIN();
