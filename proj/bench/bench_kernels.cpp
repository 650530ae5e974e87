// Serial reference vs OpenMP kernels. With one hardware thread the two
// should be within noise of each other; the parallel path pays off on the
// per-node clustering loop for large graphs and on multi-trial experiments.
#include <benchmark/benchmark.h>

#include "socialucb/config.hpp"
#include "socialucb/engine.hpp"
#include "socialucb/fitness_metrics.hpp"

namespace {

using namespace socialucb;

SocialGraph bench_graph(NodeId n) {
    Rng rng(7);
    return SocialGraph::random_sparse(n, 20.0 / n, rng);
}

void BM_NetworkStatsSerial(benchmark::State& state) {
    const auto g = bench_graph(static_cast<NodeId>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(network_stats_serial(g));
}
BENCHMARK(BM_NetworkStatsSerial)->Arg(50)->Arg(500)->Arg(5000);

void BM_NetworkStatsParallel(benchmark::State& state) {
    const auto g = bench_graph(static_cast<NodeId>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(network_stats(g));
}
BENCHMARK(BM_NetworkStatsParallel)->Arg(50)->Arg(500)->Arg(5000);

SimConfig bench_config() {
    SimConfig c;
    c.horizon = 200;
    c.trials = 8;
    return c;
}

void BM_ExperimentSerial(benchmark::State& state) {
    const auto c = bench_config();
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(c));
}
BENCHMARK(BM_ExperimentSerial)->Unit(benchmark::kMillisecond);

void BM_ExperimentParallel(benchmark::State& state) {
    const auto c = bench_config();
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c));
}
BENCHMARK(BM_ExperimentParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
