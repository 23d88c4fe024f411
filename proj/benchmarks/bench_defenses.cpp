#include <benchmark/benchmark.h>

#include "spmkit/defenses.hpp"
#include "spmkit/generators.hpp"

using namespace spmkit;

static void BM_NodeSplit50(benchmark::State& state) {
    Graph g = generate_scale_free(static_cast<int>(state.range(0)), 6, 4);
    for (auto _ : state) {
        auto result = node_split(g, 50, 1);
        benchmark::DoNotOptimize(result.arg.num_edges());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NodeSplit50)->RangeMultiplier(4)->Range(500, 8000)->Complexity()
    ->Unit(benchmark::kMillisecond);

// Exact greedy MET: one eigenpair recompute per removed edge.
static void BM_MetHarden(benchmark::State& state) {
    Graph g = generate_scale_free(1000, 5, 4);
    const std::size_t budget = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto result = met_harden(g, EdgeBudget::count(budget));
        benchmark::DoNotOptimize(result.arg.num_edges());
    }
}
BENCHMARK(BM_MetHarden)->Arg(5)->Arg(25)->Unit(benchmark::kMillisecond);
