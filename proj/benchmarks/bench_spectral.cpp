#include <benchmark/benchmark.h>

#include "spmkit/generators.hpp"
#include "spmkit/spectral.hpp"

using namespace spmkit;

static void BM_LeadingEigenpair(benchmark::State& state) {
    Graph g = generate_scale_free(static_cast<int>(state.range(0)), 6, 1);
    for (auto _ : state) {
        auto pair = leading_eigenpair(g);
        benchmark::DoNotOptimize(pair.lambda1);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LeadingEigenpair)->RangeMultiplier(4)->Range(500, 32000)->Complexity();

static void BM_EigenScores(benchmark::State& state) {
    Graph g = generate_scale_free(static_cast<int>(state.range(0)), 6, 1);
    EigenPair pair = leading_eigenpair(g);
    for (auto _ : state) {
        auto scores = eigen_scores(g, pair);
        benchmark::DoNotOptimize(scores.data());
    }
}
BENCHMARK(BM_EigenScores)->Arg(2000)->Arg(8000);
