#include <benchmark/benchmark.h>

#include <random>

#include "spingap/pathfinder.hpp"

using namespace spingap;

namespace {

GapLandscape random_landscape(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.4, 2.0);
  GapLandscape out;
  out.j = TotalSpin::from_value(1.0);
  out.power = 3;
  out.gamma_axis.resize(n);
  out.kappa_axis.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.gamma_axis[i] = out.kappa_axis[i] = static_cast<double>(i) / (n - 1);
  out.cells.resize(n * n);
  for (auto& cell : out.cells) cell.eigenvalues = {0.0, u(rng)};
  return out;
}

void BM_dijkstra(benchmark::State& state) {
  const auto landscape = random_landscape(static_cast<std::size_t>(state.range(0)), 5);
  const auto graph = build_graph(landscape);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shortest_schedule(graph).total_time);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_dijkstra)->Arg(101)->Arg(201)->Arg(401);

void BM_edge_weights(benchmark::State& state) {
  const auto landscape = random_landscape(201, 7);
  const auto graph = build_graph(landscape);
  for (auto _ : state) {
    double acc = 0.0;
    for (std::size_t g = 1; g < graph.n_gamma(); ++g)
      acc += graph.edge_weight({g, 100}, {g - 1, 100});
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_edge_weights);

}  // namespace
