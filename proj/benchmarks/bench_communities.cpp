#include <benchmark/benchmark.h>

#include "spmkit/communities.hpp"
#include "spmkit/generators.hpp"

using namespace spmkit;

static void BM_Leiden(benchmark::State& state) {
    Graph g = generate_scale_free(static_cast<int>(state.range(0)), 6, 2);
    for (auto _ : state) {
        Partition p = detect_communities(g, 1.0, 0);
        benchmark::DoNotOptimize(p.modularity);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Leiden)->RangeMultiplier(4)->Range(500, 8000)->Complexity()
    ->Unit(benchmark::kMillisecond);

static void BM_Modularity(benchmark::State& state) {
    Graph g = generate_scale_free(static_cast<int>(state.range(0)), 6, 2);
    Partition p = detect_communities(g, 1.0, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(modularity(g, p));
    }
}
BENCHMARK(BM_Modularity)->Arg(2000)->Arg(8000);
