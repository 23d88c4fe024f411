#include <benchmark/benchmark.h>

#include "spmkit/attack_registry.hpp"
#include "spmkit/epidemic.hpp"
#include "spmkit/generators.hpp"
#include "spmkit/ode.hpp"

using namespace spmkit;

static void BM_SimulateSiidr(benchmark::State& state) {
    Graph g = generate_scale_free(static_cast<int>(state.range(0)), 6, 3);
    const SiidrParams params = attack_params("wc_1_1s");
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Trajectory t = simulate(g, Model::Siidr, params, std::nullopt, 500, seed++);
        benchmark::DoNotOptimize(t.ever_infected.back());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SimulateSiidr)->RangeMultiplier(4)->Range(500, 8000)->Complexity()
    ->Unit(benchmark::kMillisecond);

static void BM_Ode(benchmark::State& state) {
    const SiidrParams params = attack_params("wc_1_1s");
    for (auto _ : state) {
        OdeSolution sol;
        benchmark::DoNotOptimize(
            (sol = ode_solve(Model::Siidr, params, 10000, 1, 500.0, 0.25)).i.back());
    }
}
BENCHMARK(BM_Ode);
