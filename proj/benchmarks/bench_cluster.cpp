#include <benchmark/benchmark.h>

#include <vector>

#include "polydisk/cluster.hpp"
#include "polydisk/estimate.hpp"
#include "polydisk/simulate.hpp"

namespace {

std::vector<polydisk::ProductPoint> two_class_points(int cells_per_class) {
  polydisk::ScenarioConfig scenario;
  scenario.seed = 404;
  scenario.n_pulses = 16;
  scenario.classes = {
      {"calm", 1.0, {{0.1, 0.0}}, 1.0, cells_per_class},
      {"spiky", 1.0, {{0.9, 0.0}}, 1.0, cells_per_class},
  };
  const polydisk::SimulatedBurst sim = polydisk::simulate_scenario(scenario);
  std::vector<polydisk::ProductPoint> points;
  std::vector<polydisk::Complex> series(scenario.n_pulses);
  for (Eigen::Index j = 0; j < sim.burst.cols(); ++j) {
    for (int t = 0; t < scenario.n_pulses; ++t) series[t] = sim.burst(t, j);
    points.push_back(polydisk::make_product_point(
        polydisk::burg_regularized(series, scenario.n_pulses - 1, 0.0), scenario.n_pulses));
  }
  return points;
}

void BM_KmeansTwoClass(benchmark::State& state) {
  const auto points = two_class_points(static_cast<int>(state.range(0)));
  polydisk::KmeansOptions options;
  options.k = 2;
  options.seed = 99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(polydisk::kmeans(points, options));
  }
}
BENCHMARK(BM_KmeansTwoClass)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
