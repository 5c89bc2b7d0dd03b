#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polydisk/estimate.hpp"
#include "polydisk/rng.hpp"

namespace polydisk {

/// A burst of coherent pulses: one complex sample per pulse (row) per range
/// cell (column). The range cells are the objects being clustered.
using Burst = ComplexMatrix;

/// Simulation parameters of one clutter class: power, spectral shape as
/// reflection coefficients, and an optional Gamma texture shape. No texture
/// means pure complex Gaussian cells.
struct ClassSpec {
  std::string name;
  double p0 = 1.0;
  std::vector<Complex> mu;
  std::optional<double> texture_shape;
  int n_cells = 0;
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  int n_pulses = 0;
  std::vector<ClassSpec> classes;
};

void validate_scenario(const ScenarioConfig& config);

/// One stationary draw of a complex Gaussian AR process with the given power
/// and reflection coefficients. A warm-up of 100 + 10 * order samples started
/// from white noise is discarded before keeping n_pulses samples.
std::vector<Complex> ar_gaussian_series(double p0, std::span<const Complex> mu, int n_pulses,
                                        PhiloxRng& rng);

/// Multiplies each range cell by sqrt(tau) with tau ~ Gamma(shape, 1/shape)
/// (unit mean), one tau per cell; the texture is constant within a burst.
Burst apply_sirv_texture(const Burst& burst, double texture_shape, PhiloxRng& rng);

struct SimulatedBurst {
  Burst burst;
  std::vector<int> labels;  // class index per range cell, aligned with columns
};

/// Generates all classes' cells and shuffles the columns with a seeded
/// permutation. Each cell uses its own RNG stream (stream id = pre-shuffle
/// cell index; the permutation uses stream id = total cell count), so output
/// is independent of generation order.
SimulatedBurst simulate_scenario(const ScenarioConfig& config);

}  // namespace polydisk
