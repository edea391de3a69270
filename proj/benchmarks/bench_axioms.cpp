#include <benchmark/benchmark.h>

#include "pcm/cone.hpp"
#include "pcm/space.hpp"

namespace {

void BM_AxiomsDirac(benchmark::State& state) {
    const auto space = pcm::dirac_space(2);
    const auto grid = pcm::TimeGrid::standard();
    const auto n = static_cast<std::size_t>(state.range(0));
    const pcm::Parallelism par{static_cast<unsigned>(state.range(1))};
    for (auto _ : state) benchmark::DoNotOptimize(pcm::check_axioms(space, n, grid, 0.0, 1, par));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n * n * grid.size() * grid.size()));
}
BENCHMARK(BM_AxiomsDirac)->Args({10, 1})->Args({10, 4})->Args({20, 1})->Args({20, 4})->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_AxiomsDirectionalGaussian(benchmark::State& state) {
    const auto space = pcm::directional_gaussian_space(pcm::Cone::orthant(2), 0.5);
    const auto grid = pcm::TimeGrid::standard();
    for (auto _ : state) benchmark::DoNotOptimize(pcm::check_axioms(space, 10, grid, 0.0, 1));
}
BENCHMARK(BM_AxiomsDirectionalGaussian)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
