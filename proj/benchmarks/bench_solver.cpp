#include <benchmark/benchmark.h>

#include "cfs/factorization.hpp"
#include "cfs/sbm.hpp"

namespace {

struct Fixture {
  cfs::SbmGraph sbm;
  cfs::LaplacianPair lap;

  explicit Fixture(int block)
      : sbm(cfs::generate_sbm({block, block}, 0.1, 0.01, 42)),
        lap(cfs::build_laplacian(sbm.graph)) {}
};

void BM_CfsStep(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)) / 2);
  auto f = cfs::init_factors(fx.sbm.graph.node_count(), 4, 0);
  for (auto _ : state) {
    f = cfs::cfs_update_step(fx.sbm.graph, fx.lap, f, 0.03125, 10.0);
    benchmark::DoNotOptimize(f.U.data());
  }
}
BENCHMARK(BM_CfsStep)->Arg(200)->Arg(1000)->Arg(4000);

void BM_NmfStep(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)) / 2);
  auto f = cfs::init_factors(fx.sbm.graph.node_count(), 4, 0);
  for (auto _ : state) {
    f = cfs::nmf_update_step(fx.sbm.graph, f);
    benchmark::DoNotOptimize(f.U.data());
  }
}
BENCHMARK(BM_NmfStep)->Arg(200)->Arg(1000)->Arg(4000);

void BM_SnmfStep(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)) / 2);
  auto f = cfs::init_factors(fx.sbm.graph.node_count(), 4, 0, /*tied=*/true);
  for (auto _ : state) {
    f = cfs::snmf_update_step(fx.sbm.graph, f);
    benchmark::DoNotOptimize(f.U.data());
  }
}
BENCHMARK(BM_SnmfStep)->Arg(200)->Arg(1000)->Arg(4000);

void BM_Objective(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)) / 2);
  const auto f = cfs::init_factors(fx.sbm.graph.node_count(), 4, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cfs::objective(fx.sbm.graph, fx.lap, f, 0.03125, 10.0));
  }
}
BENCHMARK(BM_Objective)->Arg(200)->Arg(1000)->Arg(4000);

void BM_SolvePlanted(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)) / 2);
  cfs::SolverConfig cfg;
  cfg.model = cfs::Model::cfs;
  cfg.mu = 0.03125;
  cfg.lambda = 10.0;
  cfg.k = 2;
  cfg.max_iters = 100;
  cfg.tol = 1e-6;
  for (auto _ : state) {
    auto result = cfs::solve(fx.sbm.graph, fx.lap, cfg);
    benchmark::DoNotOptimize(result.iterations_run);
  }
}
BENCHMARK(BM_SolvePlanted)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
