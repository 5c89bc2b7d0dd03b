#include "polydisk/simulate.hpp"

#include <cmath>
#include <numeric>

namespace polydisk {

void validate_scenario(const ScenarioConfig& config) {
  require(config.n_pulses >= 2, ErrorKind::InvalidOrder, "need at least two pulses");
  require(!config.classes.empty(), ErrorKind::ConfigError, "scenario needs at least one class");
  for (const ClassSpec& cls : config.classes) {
    require(cls.p0 > 0.0 && std::isfinite(cls.p0), ErrorKind::InvalidCoefficient,
            "class '" + cls.name + "': p0 must be positive");
    require(cls.n_cells >= 1, ErrorKind::ConfigError,
            "class '" + cls.name + "': n_cells must be at least 1");
    require(static_cast<int>(cls.mu.size()) < config.n_pulses, ErrorKind::InvalidOrder,
            "class '" + cls.name + "': AR order must be below n_pulses");
    for (const Complex mu : cls.mu) {
      require(std::abs(mu) <= 1.0 - kDiskBoundaryMargin, ErrorKind::InvalidCoefficient,
              "class '" + cls.name + "': |mu| must stay inside the unit disk");
    }
    if (cls.texture_shape) {
      require(*cls.texture_shape > 0.0, ErrorKind::InvalidShape,
              "class '" + cls.name + "': texture shape must be positive");
    }
  }
}

std::vector<Complex> ar_gaussian_series(double p0, std::span<const Complex> mu, int n_pulses,
                                        PhiloxRng& rng) {
  require(p0 > 0.0 && std::isfinite(p0), ErrorKind::InvalidCoefficient, "p0 must be positive");
  const int order = static_cast<int>(mu.size());
  require(order < n_pulses, ErrorKind::InvalidOrder,
          "AR order " + std::to_string(order) + " must be below n_pulses");
  for (const Complex m : mu) {
    require(std::abs(m) < 1.0, ErrorKind::InvalidCoefficient, "|mu| must be below 1");
  }

  const ArModel model = levinson(ReflectionPoint{std::log(p0), {mu.begin(), mu.end()}});
  const double sigma = std::sqrt(model.sigma2);

  // Lag buffer: prev[j] = z_{t-1-j}, seeded with white noise of power p0.
  std::vector<Complex> prev(order);
  const double amp = std::sqrt(p0);
  for (Complex& z : prev) z = amp * rng.next_complex_gaussian();

  const int burn_in = 100 + 10 * order;
  std::vector<Complex> out;
  out.reserve(n_pulses);
  for (int t = 0; t < burn_in + n_pulses; ++t) {
    Complex z = sigma * rng.next_complex_gaussian();
    for (int j = 0; j < order; ++j) z -= model.a[j] * prev[j];
    for (int j = order - 1; j > 0; --j) prev[j] = prev[j - 1];
    if (order > 0) prev[0] = z;
    if (t >= burn_in) out.push_back(z);
  }
  return out;
}

Burst apply_sirv_texture(const Burst& burst, double texture_shape, PhiloxRng& rng) {
  require(texture_shape > 0.0 && std::isfinite(texture_shape), ErrorKind::InvalidShape,
          "texture shape must be positive");
  Burst out = burst;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const double tau = rng.next_gamma(texture_shape) / texture_shape;
    out.col(j) *= std::sqrt(tau);
  }
  return out;
}

SimulatedBurst simulate_scenario(const ScenarioConfig& config) {
  validate_scenario(config);

  std::int64_t total = 0;
  for (const ClassSpec& cls : config.classes) total += cls.n_cells;

  Burst burst(config.n_pulses, total);
  std::vector<int> labels(total);

  std::int64_t cell = 0;
  for (std::size_t c = 0; c < config.classes.size(); ++c) {
    const ClassSpec& cls = config.classes[c];
    for (int j = 0; j < cls.n_cells; ++j, ++cell) {
      PhiloxRng rng(config.seed, static_cast<std::uint64_t>(cell));
      const std::vector<Complex> series =
          ar_gaussian_series(cls.p0, cls.mu, config.n_pulses, rng);
      for (int t = 0; t < config.n_pulses; ++t) burst(t, cell) = series[t];
      if (cls.texture_shape) {
        const double tau = rng.next_gamma(*cls.texture_shape) / *cls.texture_shape;
        burst.col(cell) *= std::sqrt(tau);
      }
      labels[cell] = static_cast<int>(c);
    }
  }

  // Seeded Fisher-Yates shuffle of the cell columns.
  PhiloxRng shuffle_rng(config.seed, static_cast<std::uint64_t>(total));
  std::vector<std::int64_t> perm(total);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::int64_t i = total - 1; i > 0; --i) {
    const auto j = static_cast<std::int64_t>(shuffle_rng.next_below(i + 1));
    std::swap(perm[i], perm[j]);
  }

  SimulatedBurst out;
  out.burst.resize(config.n_pulses, total);
  out.labels.resize(total);
  for (std::int64_t i = 0; i < total; ++i) {
    out.burst.col(i) = burst.col(perm[i]);
    out.labels[i] = labels[perm[i]];
  }
  return out;
}

}  // namespace polydisk
