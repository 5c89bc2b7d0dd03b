#include <benchmark/benchmark.h>

#include <vector>

#include "polydisk/poincare.hpp"
#include "polydisk/rng.hpp"
#include "polydisk/siegel.hpp"

namespace {

using polydisk::Complex;
using polydisk::ComplexMatrix;
using polydisk::PhiloxRng;
using polydisk::ProductPoint;

ProductPoint random_point(PhiloxRng& rng, int order, int n_pulses) {
  std::vector<Complex> mu(order);
  for (Complex& m : mu) {
    const double r = 0.8 * rng.next_double();
    const double phase = 6.283185307179586 * rng.next_double();
    m = Complex{r * std::cos(phase), r * std::sin(phase)};
  }
  return polydisk::make_product_point(rng.next_gaussian(), std::move(mu), n_pulses);
}

polydisk::SiegelPoint random_siegel(PhiloxRng& rng, int dim) {
  ComplexMatrix z(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) z(i, j) = rng.next_complex_gaussian();
  }
  const double top = polydisk::matrix_norms(z).spectral;
  return polydisk::SiegelPoint(z * (0.6 / top));
}

void BM_ProductDistance(benchmark::State& state) {
  PhiloxRng rng(11, 0);
  const ProductPoint x = random_point(rng, 15, 16);
  const ProductPoint y = random_point(rng, 15, 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(polydisk::product_distance(x, y));
  }
}
BENCHMARK(BM_ProductDistance);

void BM_SiegelDistance(benchmark::State& state) {
  PhiloxRng rng(12, 0);
  const auto z1 = random_siegel(rng, static_cast<int>(state.range(0)));
  const auto z2 = random_siegel(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(polydisk::siegel_distance(z1, z2));
  }
}
BENCHMARK(BM_SiegelDistance)->Arg(2)->Arg(4)->Arg(8);

void BM_KarcherMean(benchmark::State& state) {
  PhiloxRng rng(13, 0);
  std::vector<ProductPoint> points;
  for (int i = 0; i < state.range(0); ++i) points.push_back(random_point(rng, 15, 16));
  const std::vector<double> weights(points.size(), 1.0 / points.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(polydisk::karcher_mean(points, weights));
  }
}
BENCHMARK(BM_KarcherMean)->Arg(32)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
