// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "mf/auxfun.hpp"
#include "mf/linform.hpp"
#include "mf/meijer.hpp"

using namespace mf;

static void BM_ScanSerial(benchmark::State& state) {
  const PrecisionBudget b(256);
  for (auto _ : state) benchmark::DoNotOptimize(scan_serial(state.range(0), kDefaultGamma, b));
}
BENCHMARK(BM_ScanSerial)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_ScanOmp(benchmark::State& state) {
  const PrecisionBudget b(256);
  for (auto _ : state) benchmark::DoNotOptimize(scan(state.range(0), kDefaultGamma, b));
}
BENCHMARK(BM_ScanOmp)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static APComplex series_point(const PrecisionBudget& b) {
  return APComplex(BigRational(11, 10), BigRational(1, 5), b.working_bits());
}

static void BM_SeriesSerial(benchmark::State& state) {
  const PrecisionBudget b(state.range(0));
  const APComplex z = series_point(b);
  for (auto _ : state) benchmark::DoNotOptimize(series_f246_serial(1, 2, z, b));
}
BENCHMARK(BM_SeriesSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_SeriesOmp(benchmark::State& state) {
  const PrecisionBudget b(state.range(0));
  const APComplex z = series_point(b);
  for (auto _ : state) benchmark::DoNotOptimize(series_f246(1, 2, z, b));
}
BENCHMARK(BM_SeriesOmp)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_ContourL0(benchmark::State& state) {
  const PrecisionBudget b(state.range(0));
  const GParams g(1, 1, 1, 1, {BigRational(-1, 2)}, {BigRational(0)});
  const OmegaPoint z = omega_normalize(APComplex(BigRational(1, 2), BigRational(0), b.working_bits()));
  for (auto _ : state) benchmark::DoNotOptimize(eval_G(g, z, Contour::L0, b));
}
BENCHMARK(BM_ContourL0)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
