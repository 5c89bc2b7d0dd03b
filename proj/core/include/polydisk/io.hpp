#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "polydisk/poincare.hpp"
#include "polydisk/siegel.hpp"
#include "polydisk/simulate.hpp"

namespace polydisk::io {

/// Burst CSV: an optional first line "# pulses=<n>", then one line per range
/// cell with 2 * n_pulses decimal fields re(z_0), im(z_0), ..., re(z_{n-1}),
/// im(z_{n-1}). write_burst always emits the header and round-trips all
/// finite values bit-exactly.
Burst read_burst(const std::filesystem::path& path);
void write_burst(const Burst& burst, const std::filesystem::path& path);

/// Points file: JSON lines, one object per cell:
/// {"log_p0": r, "mu": [[re, im], ...], "n_pulses": n}.
std::vector<ProductPoint> read_points(const std::filesystem::path& path);
void write_points(std::span<const ProductPoint> points, const std::filesystem::path& path);

/// Labels file: one non-negative integer per line.
std::vector<int> read_labels(const std::filesystem::path& path);
void write_labels(std::span<const int> labels, const std::filesystem::path& path);

/// Block-major JSON serialization of Block-Toeplitz parameters: R0 and each
/// A_k as nested row-major arrays of [re, im] pairs.
std::string siegel_params_to_json(const SiegelParams& params);
SiegelParams siegel_params_from_json(const std::string& text);

/// Writes the whole buffer or throws; used so failed commands never leave a
/// partial artifact behind.
void write_file(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace polydisk::io
