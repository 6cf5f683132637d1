#include "pconvex/caratheodory.hpp"
#include "pconvex/combination.hpp"
#include "pconvex/rng.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace pconvex;

namespace {

struct Instance {
    GeneratorSet gens;
    PCombination comb;
};

Instance make_instance(int n, int support) {
    CounterRng rng(99, static_cast<std::uint64_t>(n * 1000 + support));
    const int num_gens = n + 4;
    std::vector<Vector> pts;
    for (int j = 0; j < num_gens; ++j) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v(i) = rng.normal();
        pts.push_back(v / v.norm());
    }
    std::vector<Term> terms;
    for (int j = 0; j < support; ++j) {
        terms.push_back({static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(num_gens)),
                         rng.uniform01() < 0.5 ? -1 : 1, 0.01 + rng.uniform01()});
    }
    PCombination comb(n, terms);
    const double w = combination_weight(comb, PExponent(0.5));
    for (Term& t : terms) t.lambda *= std::pow(0.9 / w, 2.0);
    return {GeneratorSet(n, pts), PCombination(n, terms)};
}

}  // namespace

static void BM_CaratheodoryReduce(benchmark::State& state) {
    const Instance inst = make_instance(static_cast<int>(state.range(0)),
                                        static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            caratheodory_reduce(inst.comb, inst.gens, PExponent(0.5)).iterations);
    }
}
BENCHMARK(BM_CaratheodoryReduce)->Args({3, 8})->Args({4, 12})->Args({5, 20});

static void BM_Lemma4(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    CounterRng rng(98, static_cast<std::uint64_t>(n));
    std::vector<Vector> points;
    for (int j = 0; j < n; ++j) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v(i) = rng.normal();
        points.push_back(v / v.norm());
    }
    Vector q(n);
    for (int i = 0; i < n; ++i) q(i) = rng.normal();
    q /= q.norm();
    std::vector<double> lambdas(static_cast<std::size_t>(n) + 1, 0.0);
    double w = 0.0;
    for (auto& l : lambdas) {
        l = 0.1 + rng.uniform01();
        w += std::sqrt(l);
    }
    for (auto& l : lambdas) l *= std::pow(0.95 / w, 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lemma4_reduce(points, q, lambdas, PExponent(0.5)).size());
    }
}
BENCHMARK(BM_Lemma4)->DenseRange(2, 6);
