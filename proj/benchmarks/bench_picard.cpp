#include <benchmark/benchmark.h>

#include "pcm/contract.hpp"
#include "pcm/solver.hpp"

namespace {

void BM_PicardRotation(benchmark::State& state) {
    const auto space = pcm::dirac_space(2);
    const auto map = pcm::rotation_half();
    for (auto _ : state) benchmark::DoNotOptimize(pcm::picard(space, map, {1.0, 0.0}, 1e-10, 1000));
}
BENCHMARK(BM_PicardRotation);

void BM_CheckBounds(benchmark::State& state) {
    const auto space = pcm::dirac_space(2);
    const auto trace = pcm::picard(space, pcm::scale(0.2), {1.0, 0.0}, 1e-10, 1000);
    const auto grid = pcm::TimeGrid::standard();
    for (auto _ : state) benchmark::DoNotOptimize(pcm::check_bounds(space, trace, 0.3, grid, 0.0));
}
BENCHMARK(BM_CheckBounds);

void BM_CheckKannan(benchmark::State& state) {
    const auto space = pcm::dirac_space(2);
    const auto map = pcm::scale(0.2);
    const auto pairs = pcm::sample_pairs(space, map, static_cast<std::size_t>(state.range(0)), 3);
    const auto grid = pcm::TimeGrid::standard();
    for (auto _ : state) benchmark::DoNotOptimize(pcm::check_kannan(space, map, 0.3, pairs, grid, 0.0));
}
BENCHMARK(BM_CheckKannan)->Arg(200)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
