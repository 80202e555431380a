#include <benchmark/benchmark.h>

#include "bogctilt/flows.hpp"
#include "bogctilt/operators.hpp"
#include "bogctilt/tilt.hpp"

namespace {

using namespace bogctilt;

void BM_FredholmDet(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  SymbolFactorization fact = series_log_split(SymbolSpec::exponential({0.3}), 2 * m);
  TruncatedOperator k = bogc_kernel(fact, m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fredholm_det(k, 0).value);
  }
}
BENCHMARK(BM_FredholmDet)->Arg(64)->Arg(128)->Arg(256);

void BM_BogcKernel(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  SymbolFactorization fact = series_log_split(SymbolSpec::exponential({0.3}), 2 * m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bogc_kernel(fact, m).entries);
  }
}
BENCHMARK(BM_BogcKernel)->Arg(64)->Arg(128)->Arg(256);

void BM_Factorization(benchmark::State& state) {
  const int hw = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(series_log_split(SymbolSpec::exponential({0.2, 0.05}), hw));
  }
}
BENCHMARK(BM_Factorization)->Arg(128)->Arg(256)->Arg(512);

void BM_TiltedRhs(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  SymbolFactorization fact = series_log_split(SymbolSpec::exponential({0.3}), 2 * m);
  RngStream rng(7, "bench/tilts");
  TiltFamily tilts = TiltFamily::random_polynomial(rng, 4, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tilted_fredholm_rhs(fact, tilts, 4, m));
  }
}
BENCHMARK(BM_TiltedRhs)->Arg(64)->Arg(128);

void BM_UniversalResolvent(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  SymbolFactorization fact = series_log_split(SymbolSpec::exponential({0.2, 0.05}), 2 * m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(universal_resolvent(fact, 6, 6, m));
  }
}
BENCHMARK(BM_UniversalResolvent)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
