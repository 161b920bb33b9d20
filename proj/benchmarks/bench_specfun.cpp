#include <benchmark/benchmark.h>

#include "csbm/specfun.hpp"

namespace {

void BM_LogGamma(benchmark::State& state) {
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(csbm::specfun::log_gamma(x));
    x += 1.7;
    if (x > 1e6) x = 0.37;
  }
}
BENCHMARK(BM_LogGamma);

void BM_RegIncBeta(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(csbm::specfun::reg_inc_beta(0.01, a, 10 * a));
  }
}
BENCHMARK(BM_RegIncBeta)->Arg(2)->Arg(32)->Arg(512);

void BM_RegLowerIncGamma(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(csbm::specfun::reg_lower_inc_gamma(a, 0.8 * a));
  }
}
BENCHMARK(BM_RegLowerIncGamma)->Arg(2)->Arg(32)->Arg(512);

}  // namespace
