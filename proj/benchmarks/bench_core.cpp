#include <benchmark/benchmark.h>

#include "clvr/amm.hpp"
#include "clvr/metrics.hpp"
#include "clvr/sequencers.hpp"
#include "clvr/workload.hpp"

namespace {

const clvr::Pool kPool{2'000'000.0, 2'000'000.0, 0.0};

clvr::Block bench_block(std::size_t n) {
  clvr::WorkloadSpec spec;
  spec.n = n;
  spec.seed = 7;
  return clvr::generate_block(spec);
}

void BM_ExecuteBlock(benchmark::State& state) {
  const clvr::Block block = bench_block(state.range(0));
  const clvr::Ordering ordering = clvr::identity_ordering(block.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        clvr::execute_block(kPool, block, ordering, false));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExecuteBlock)->Arg(10)->Arg(100)->Arg(1000);

void BM_Volatility(benchmark::State& state) {
  const clvr::Block block = bench_block(state.range(0));
  const clvr::ExecutionTrace trace = clvr::execute_block(
      kPool, block, clvr::identity_ordering(block.size()), false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(clvr::volatility_value(trace));
  }
}
BENCHMARK(BM_Volatility)->Arg(10)->Arg(100)->Arg(1000);

void BM_ClvrOrdering(benchmark::State& state) {
  const clvr::Block block = bench_block(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(clvr::clvr_ordering(kPool, block));
  }
}
BENCHMARK(BM_ClvrOrdering)->Arg(10)->Arg(30)->Arg(100)->Arg(300)->Arg(1000);

void BM_VhgsrOrdering(benchmark::State& state) {
  const clvr::Block block = bench_block(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(clvr::vhgsr_ordering(kPool, block));
  }
}
BENCHMARK(BM_VhgsrOrdering)->Arg(10)->Arg(100)->Arg(1000);

void BM_BruteForceMin(benchmark::State& state) {
  const clvr::Block block = bench_block(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(clvr::brute_force_search(
        kPool, block, clvr::Metric::Volatility, false));
  }
}
BENCHMARK(BM_BruteForceMin)->DenseRange(4, 9);

void BM_GenerateBlock(benchmark::State& state) {
  clvr::WorkloadSpec spec;
  spec.n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    spec.seed = seed++;
    benchmark::DoNotOptimize(clvr::generate_block(spec));
  }
}
BENCHMARK(BM_GenerateBlock)->Arg(10)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
