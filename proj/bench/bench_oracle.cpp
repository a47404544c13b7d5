// Serial reference vs OpenMP kernels for the exhaustive sweeps.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>

#include "pilab/generators.hpp"
#include "pilab/oracle.hpp"
#include "pilab/structural.hpp"

using namespace pilab;

namespace {

CnfFormula formula_for(benchmark::State& state) {
  const auto n = state.range(0);
  return gen_random_2cnf(n, 2 * n, 42).formula;
}

OracleLimits wide() {
  OracleLimits l;
  l.max_vars = 14;
  l.max_sweep_vars = 26;
  return l;
}

void BM_PrimeImplicantsSerial(benchmark::State& state) {
  const CnfFormula f = formula_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_prime_implicants_serial(f, wide()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(std::pow(3.0, state.range(0))));
}

void BM_PrimeImplicantsParallel(benchmark::State& state) {
  const CnfFormula f = formula_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_prime_implicants(f, wide()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(std::pow(3.0, state.range(0))));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_IsolatedSerial(benchmark::State& state) {
  const CnfFormula f = formula_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_isolated_serial(f, wide()));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

void BM_IsolatedParallel(benchmark::State& state) {
  const CnfFormula f = formula_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_isolated(f, wide()));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_Structural(benchmark::State& state) {
  const CnfFormula f = formula_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_prime_implicants(f, wide()));
}

}  // namespace

BENCHMARK(BM_PrimeImplicantsSerial)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimeImplicantsParallel)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IsolatedSerial)->DenseRange(14, 22, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IsolatedParallel)->DenseRange(14, 22, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Structural)->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
