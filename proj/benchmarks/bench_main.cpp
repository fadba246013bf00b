#include <benchmark/benchmark.h>

#include "senga/senga.hpp"

namespace {

using namespace senga;

const TspInstance& bench_instance() {
    static const TspInstance inst = TspInstance::generate(1, 100, 1000.0);
    return inst;
}

void BM_TourLength(benchmark::State& state) {
    const TspInstance& inst = bench_instance();
    Rng rng(7);
    const Chromosome ch = random_chromosome(inst, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(inst.tour_length_unchecked(ch.tour));
}
BENCHMARK(BM_TourLength);

void BM_OrderCrossover(benchmark::State& state) {
    const TspInstance& inst = bench_instance();
    Rng rng(7);
    const Chromosome a = random_chromosome(inst, rng);
    const Chromosome b = random_chromosome(inst, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(two_point_crossover(inst, a, b, rng));
}
BENCHMARK(BM_OrderCrossover);

void BM_Mutate(benchmark::State& state) {
    const TspInstance& inst = bench_instance();
    Rng rng(7);
    Chromosome ch = random_chromosome(inst, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(mutate(inst, ch, 1.0 / 10000.0, rng));
}
BENCHMARK(BM_Mutate);

void BM_StrategyStep(benchmark::State& state) {
    const TspInstance& inst = bench_instance();
    StrategyConfig cfg;
    cfg.variant = static_cast<Strategy>(state.range(0));
    Rng rng(7);
    std::vector<Chromosome> pop = initial_population(inst, cfg, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(step_strategy(inst, pop, cfg, rng));
}
BENCHMARK(BM_StrategyStep)
    ->DenseRange(0, 5)
    ->ArgNames({"strategy"});

void BM_CaGeneration(benchmark::State& state) {
    const TspInstance& inst = bench_instance();
    CaConfig cfg;
    Rng rng(7);
    Grid grid(cfg.width, cfg.height);
    for (int r = 0; r < cfg.height; ++r)
        for (int c = 0; c < cfg.width; ++c)
            grid.cell(r, c) = random_chromosome(inst, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(ca_generation(inst, grid, cfg, rng));
}
BENCHMARK(BM_CaGeneration);

} // namespace

BENCHMARK_MAIN();
