#include <benchmark/benchmark.h>

#include "perc/estimators.hpp"
#include "perc/graph.hpp"
#include "perc/percolation.hpp"
#include "perc/rng.hpp"
#include "perc/union_find.hpp"

namespace {

void BM_sample_torus(benchmark::State& state) {
  const perc::Graph g = perc::Graph::torus({32, 32});
  const double p = state.range(0) / 100.0;
  perc::Configuration cfg;
  std::uint64_t r = 0;
  for (auto _ : state) {
    perc::SplitRng rng(1, r++);
    perc::sample_into(g, p, rng, cfg);
    benchmark::DoNotOptimize(cfg.open_edges.data());
  }
}
BENCHMARK(BM_sample_torus)->Arg(5)->Arg(50)->Arg(95);

void BM_cluster_stats(benchmark::State& state) {
  const perc::Graph g = perc::Graph::torus({32, 32});
  perc::Configuration cfg;
  perc::UnionFind uf(g.n_vertices());
  std::uint64_t r = 0;
  for (auto _ : state) {
    perc::SplitRng rng(2, r++);
    perc::sample_into(g, 0.5, rng, cfg);
    benchmark::DoNotOptimize(perc::k1_k2(g, cfg, uf));
  }
}
BENCHMARK(BM_cluster_stats);

void BM_sweep_complete(benchmark::State& state) {
  const perc::Graph g = perc::Graph::complete(static_cast<int>(state.range(0)));
  std::uint64_t r = 0;
  for (auto _ : state) {
    const perc::SweepRecord rec = perc::sweep(g, 3, r++);
    benchmark::DoNotOptimize(rec.k1.data());
  }
}
BENCHMARK(BM_sweep_complete)->Arg(64)->Arg(128);

void BM_sweep_pool_eval(benchmark::State& state) {
  const perc::Graph g = perc::Graph::complete(400);
  const perc::SweepPool pool = perc::build_sweep_pool(g, 0.5, 200, 4);
  double p = 1.0 / 400;
  for (auto _ : state) {
    benchmark::DoNotOptimize(perc::pool_eval(pool, p));
    p = p < 6.0 / 400 ? p + 1e-5 : 1.0 / 400;
  }
}
BENCHMARK(BM_sweep_pool_eval);

}  // namespace

BENCHMARK_MAIN();
