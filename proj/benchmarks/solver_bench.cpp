#include <benchmark/benchmark.h>

#include "mgt/cubic.hpp"
#include "mgt/metric.hpp"
#include "mgt/spectrum.hpp"

using namespace mgt;

static void BM_SolveCharacteristic_Pair(benchmark::State& state) {
  const ModelParams p(1.0, 2.0);
  double mu = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_characteristic(p, mu));
    mu = mu < 1e6 ? mu * 1.0000001 : 1.0;
  }
}
BENCHMARK(BM_SolveCharacteristic_Pair);

static void BM_SolveCharacteristic_ThreeReal(benchmark::State& state) {
  const ModelParams p(1.0 / 6.0, 11.0 / 6.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_characteristic(p, 1.0));
  }
}
BENCHMARK(BM_SolveCharacteristic_ThreeReal);

static void BM_CriticalMasses(benchmark::State& state) {
  const ModelParams p(1.0 / 6.0, 11.0 / 6.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(critical_masses(p));
  }
}
BENCHMARK(BM_CriticalMasses);

static void BM_AssembleSpectrum(benchmark::State& state) {
  const ModelParams p(1.0, 2.0);
  const ModeSet modes = modes_dirichlet_1d(1.0, M_PI, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_spectrum(p, modes));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AssembleSpectrum)->Arg(10)->Arg(40)->Arg(160)->Complexity();

static void BM_ModalGram(benchmark::State& state) {
  const ModelParams p(1.0, 2.0);
  const RootTriple t = solve_characteristic(p, 25.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(modal_gram(Space::H1, 25.0, t));
  }
}
BENCHMARK(BM_ModalGram);

static void BM_EquivalenceBounds(benchmark::State& state) {
  const ModelParams p(1.0, 2.0);
  const ModalGram g = modal_gram(Space::H1, 25.0, solve_characteristic(p, 25.0));
  const NaturalWeight w = natural_weight(Space::H1, 25.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(equivalence_bounds(g.gram, w));
  }
}
BENCHMARK(BM_EquivalenceBounds);

BENCHMARK_MAIN();
