#include <benchmark/benchmark.h>

#include "spingap/eigensolve.hpp"
#include "spingap/spectrum.hpp"
#include "spingap/spinspace.hpp"

using namespace spingap;

namespace {

void BM_pspin_gap(benchmark::State& state) {
  const TotalSpin j = TotalSpin::from_two_j(static_cast<int>(2 * state.range(0)));
  const SpinParams params{j, 3, {0.6, 0.48}};
  const auto h = build_pspin_hamiltonian(params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lowest_eigenpairs(h, 2).delta01());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_pspin_gap)->Arg(25)->Arg(50)->Arg(100)->Arg(200);

void BM_pspin_build(benchmark::State& state) {
  const TotalSpin j = TotalSpin::from_two_j(static_cast<int>(2 * state.range(0)));
  const SpinParams params{j, 3, {0.6, 0.48}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_pspin_hamiltonian(params).dim());
  }
}
BENCHMARK(BM_pspin_build)->Arg(50)->Arg(200);

void BM_ground_state_vectors(benchmark::State& state) {
  const TotalSpin j = TotalSpin::from_two_j(static_cast<int>(2 * state.range(0)));
  const SpinParams params{j, 3, {0.6, 0.48}};
  const auto h = build_pspin_hamiltonian(params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lowest_eigenpairs_banded(h, 2, true).vectors.size());
  }
}
BENCHMARK(BM_ground_state_vectors)->Arg(50)->Arg(100);

}  // namespace
