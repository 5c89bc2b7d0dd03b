#include <benchmark/benchmark.h>

#include <vector>

#include "polydisk/estimate.hpp"
#include "polydisk/rng.hpp"
#include "polydisk/simulate.hpp"

namespace {

std::vector<polydisk::Complex> make_series(int n) {
  polydisk::PhiloxRng rng(7, 0);
  const std::vector<polydisk::Complex> mu = {{0.6, 0.1}, {-0.2, 0.3}};
  return polydisk::ar_gaussian_series(1.0, mu, n, rng);
}

void BM_BurgShortBurst(benchmark::State& state) {
  const auto series = make_series(16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(polydisk::burg_regularized(series, 15, 0.0));
  }
}
BENCHMARK(BM_BurgShortBurst);

void BM_BurgLongSeries(benchmark::State& state) {
  const auto series = make_series(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(polydisk::burg_regularized(series, 15, 0.0));
  }
}
BENCHMARK(BM_BurgLongSeries)->Arg(1024)->Arg(8192);

void BM_CovarianceRoundTrip(benchmark::State& state) {
  const auto point = polydisk::burg_regularized(make_series(64), 15, 0.0);
  for (auto _ : state) {
    const auto cov = polydisk::covariance_from_reflection(point, 16);
    benchmark::DoNotOptimize(polydisk::reflection_from_covariance(cov));
  }
}
BENCHMARK(BM_CovarianceRoundTrip);

}  // namespace

BENCHMARK_MAIN();
