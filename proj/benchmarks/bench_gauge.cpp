#include "pconvex/gluskin.hpp"
#include "pconvex/norms.hpp"
#include "pconvex/rng.hpp"

#include <benchmark/benchmark.h>

using namespace pconvex;

static void BM_GaugeGluskin(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PNormedSpace space = random_gluskin_space({n, PExponent(0.5), 1});
    CounterRng rng(2, 0);
    Vector x(n);
    for (int i = 0; i < n; ++i) x(i) = rng.normal();
    for (auto _ : state) {
        benchmark::DoNotOptimize(gauge(x, space));
    }
}
BENCHMARK(BM_GaugeGluskin)->DenseRange(2, 5);

static void BM_SubsetTableBuild(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PNormedSpace space = random_gluskin_space({n, PExponent(0.5), 1});
    for (auto _ : state) {
        SubsetTable table(space.body().generators());
        benchmark::DoNotOptimize(table.entries().size());
    }
}
BENCHMARK(BM_SubsetTableBuild)->DenseRange(2, 5);

static void BM_OperatorNorm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PNormedSpace x_space = random_gluskin_space({n, PExponent(0.5), 1});
    const PNormedSpace y_space = random_gluskin_space({n, PExponent(0.5), 2});
    const LinearMap id = LinearMap::identity(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(operator_norm(id, x_space, y_space));
    }
}
BENCHMARK(BM_OperatorNorm)->DenseRange(2, 5);

static void BM_VolumeMc(benchmark::State& state) {
    const PNormedSpace space = random_gluskin_space({3, PExponent(0.5), 1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(volume_mc(space, state.range(0), 7).mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VolumeMc)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
