#include <benchmark/benchmark.h>

#include "cfs/metrics.hpp"
#include "cfs/partition.hpp"
#include "cfs/random.hpp"
#include "cfs/sbm.hpp"

namespace {

void BM_Modularity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto sbm = cfs::generate_sbm({n / 2, n / 2}, 0.05, 0.005, 1);
  const auto p = cfs::to_partition(sbm.truth);
  for (auto _ : state)
    benchmark::DoNotOptimize(cfs::modularity(sbm.graph, p));
}
BENCHMARK(BM_Modularity)->Arg(1000)->Arg(5000);

void BM_NmiAri(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  cfs::RandomEngine rng(3);
  cfs::Partition a, b;
  a.community_count = b.community_count = 16;
  for (int i = 0; i < n; ++i) {
    a.labels.push_back(static_cast<int>(rng() % 16));
    b.labels.push_back(static_cast<int>(rng() % 16));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfs::nmi(a, b));
    benchmark::DoNotOptimize(cfs::ari(a, b));
  }
}
BENCHMARK(BM_NmiAri)->Arg(10000)->Arg(100000);

void BM_Asymmetry(benchmark::State& state) {
  const auto f = cfs::init_factors(static_cast<int>(state.range(0)), 8, 0);
  for (auto _ : state) benchmark::DoNotOptimize(cfs::asymmetry(f));
}
BENCHMARK(BM_Asymmetry)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
