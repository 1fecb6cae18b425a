#include <benchmark/benchmark.h>

#include "dutchdraw/kernels.hpp"
#include "dutchdraw/oracle.hpp"

using namespace dutchdraw;

namespace {

std::vector<Count> all_ks(Count m) {
  std::vector<Count> ks;
  for (Count k = 1; k < m; ++k) ks.push_back(k);
  return ks;
}

void BM_ScanParallel(benchmark::State& state) {
  const ProblemShape shape(state.range(0), state.range(0) / 3);
  const auto spec = make_spec(MeasureKind::G2);
  const auto ks = all_ks(shape.m);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::expectation_scan(spec, shape, ks));
}

void BM_ScanSerial(benchmark::State& state) {
  const ProblemShape shape(state.range(0), state.range(0) / 3);
  const auto spec = make_spec(MeasureKind::G2);
  const auto ks = all_ks(shape.m);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::expectation_scan_serial(spec, shape, ks));
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const ProblemShape shape(500, 120);
  const auto spec = make_spec(MeasureKind::TS);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::monte_carlo(spec, shape, 200, state.range(0), 1));
  }
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const ProblemShape shape(500, 120);
  const auto spec = make_spec(MeasureKind::TS);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::monte_carlo_serial(spec, shape, 200, state.range(0), 1));
  }
}

void BM_ValidateParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle::validate_all(state.range(0), 1e-10));
}

void BM_ValidateSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle::validate_all_serial(state.range(0), 1e-10));
}

}  // namespace

BENCHMARK(BM_ScanParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ValidateParallel)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ValidateSerial)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
