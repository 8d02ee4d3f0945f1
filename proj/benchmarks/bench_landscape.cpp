#include <benchmark/benchmark.h>

#include "spingap/parallel.hpp"
#include "spingap/spectrum.hpp"

using namespace spingap;

namespace {

void BM_landscape_scan(benchmark::State& state) {
  const TotalSpin j = TotalSpin::from_two_j(static_cast<int>(2 * state.range(0)));
  const std::size_t n = static_cast<std::size_t>(state.range(1));
  std::vector<double> axis(n);
  for (std::size_t i = 0; i < n; ++i) axis[i] = static_cast<double>(i) / (n - 1);
  const ParallelMap pool = ParallelMap::hardware();
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_landscape(j, 3, axis, axis, pool, 2).cells.size());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_landscape_scan)->Args({25, 41})->Args({40, 41})->Args({40, 81});

void BM_saddle_search(benchmark::State& state) {
  const TotalSpin j = TotalSpin::from_two_j(static_cast<int>(2 * state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(saddle_search(j, 3).gap);
  }
}
BENCHMARK(BM_saddle_search)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
