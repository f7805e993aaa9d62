#include <benchmark/benchmark.h>

#include "contactlab/cluster_search.hpp"
#include "contactlab/constructors.hpp"
#include "contactlab/digital.hpp"
#include "contactlab/geometry.hpp"
#include "contactlab/separability.hpp"
#include "contactlab/small_graph.hpp"

using namespace contactlab;

static SmallGraph octahedron() {
  SmallGraph g(6);
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      if (j != i + 3 || i >= 3) g.add_edge(i, j);
    }
  }
  return g;
}

static void BM_CanonicalForm(benchmark::State& state) {
  // The Petersen graph: 10 vertices, edge-transitive, heavy on automorphism pruning.
  SmallGraph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(g).code);
}
BENCHMARK(BM_CanonicalForm);

static void BM_EnumerateCandidates(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cluster::enumerate_candidates(n).size());
}
BENCHMARK(BM_EnumerateCandidates)->DenseRange(6, 8)->Unit(benchmark::kMillisecond);

static void BM_SolveOctahedron(benchmark::State& state) {
  const auto g = octahedron();
  cluster::SolverConfig cfg;
  for (auto _ : state) {
    cfg.seed += 1;
    benchmark::DoNotOptimize(cluster::solve_embedding(g, cfg).residual);
  }
}
BENCHMARK(BM_SolveOctahedron)->Unit(benchmark::kMicrosecond);

static void BM_ContactGraphFcc(benchmark::State& state) {
  const auto p = constructors::fcc_bipyramid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(contact_graph(p).contact_count());
  state.SetComplexityN(static_cast<std::int64_t>(p.size()));
}
BENCHMARK(BM_ContactGraphFcc)->DenseRange(3, 8)->Complexity(benchmark::oNSquared);

static void BM_SeparabilityQuasiSquare(benchmark::State& state) {
  const auto p = digital::to_digital_packing(digital::quasi_square(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(separability::total_separability(p).status);
}
BENCHMARK(BM_SeparabilityQuasiSquare)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMillisecond);

static void BM_VolumeEstimate(benchmark::State& state) {
  Packing p;
  p.dim = 3;
  p.radius = 1.0;
  p.centers = {{0.0, 0.0, 0.0}, {2.0, 0.0, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(parallel_volume_estimate(p, 0.5, 1 << 18, 7).estimate);
  state.SetItemsProcessed(state.iterations() * (1 << 18));
}
BENCHMARK(BM_VolumeEstimate)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
