#include <benchmark/benchmark.h>

#include "spingap/doublewell.hpp"
#include "spingap/special_functions.hpp"

using namespace spingap;

namespace {

void BM_solve_well(benchmark::State& state) {
  const auto well = PiecewiseWell::symmetric(3.0, 1.0);
  WellSolveOptions opts;
  opts.n_points = static_cast<std::size_t>(state.range(0));
  opts.with_vectors = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_well(well, 2, opts).gap_ratio);
  }
}
BENCHMARK(BM_solve_well)->Arg(2001)->Arg(4001)->Arg(8001);

void BM_solve_well_vectors(benchmark::State& state) {
  const auto well = PiecewiseWell::symmetric(3.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_well(well, 2).eigenfunctions.size());
  }
}
BENCHMARK(BM_solve_well_vectors);

void BM_parabolic_cylinder_series(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(parabolic_cylinder_d(1.3, 2.7));
  }
}
BENCHMARK(BM_parabolic_cylinder_series);

void BM_parabolic_cylinder_asymptotic(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(parabolic_cylinder_d(1.3, 18.0));
  }
}
BENCHMARK(BM_parabolic_cylinder_asymptotic);

void BM_summit_kummer(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(summit_ground_kummer(0.4, 1.8));
  }
}
BENCHMARK(BM_summit_kummer);

}  // namespace
