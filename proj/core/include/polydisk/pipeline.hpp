#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "polydisk/cluster.hpp"
#include "polydisk/io.hpp"
#include "polydisk/simulate.hpp"

namespace polydisk {

struct BurgConfig {
  int order = 0;  // 0 means "full": n_pulses - 1
  double gamma = 0.0;
};

enum class SpectrumStatistic { median, mean };

struct SpectrumConfig {
  int n_freq = 512;
  SpectrumStatistic statistic = SpectrumStatistic::median;
};

struct IoPaths {
  std::string burst = "burst.csv";
  std::string labels = "labels.csv";
  std::string points = "points.jsonl";
  std::string model = "model.json";
  std::string report = "report.json";
  std::string spectrum = "spectrum.csv";
};

/// Fully resolved run configuration. Stage seeds not given explicitly in the
/// config file are derived from the master seed as
/// derive_seed(master, "simulate") and derive_seed(master, "cluster").
struct PipelineConfig {
  std::uint64_t seed = 0;
  ScenarioConfig scenario;
  BurgConfig burg;
  KmeansOptions kmeans;
  SpectrumConfig spectrum;
  IoPaths io;
  std::string echo;  // resolved config as canonical JSON
};

/// Parses a config file, rejecting unknown keys. `seed_override` replaces the
/// master seed before stage seeds are derived; explicitly configured stage
/// seeds always win.
PipelineConfig load_pipeline_config(const std::filesystem::path& path,
                                    std::optional<std::uint64_t> seed_override = {});
PipelineConfig parse_pipeline_config(const std::string& text,
                                     std::optional<std::uint64_t> seed_override = {});

struct StagePaths {
  std::optional<std::filesystem::path> input;
  std::optional<std::filesystem::path> output;
};

/// Each command validates its inputs, runs, writes its artifact(s), and
/// returns a one-object JSON stage report. Nothing is written when an error
/// is thrown.
std::string run_simulate(const PipelineConfig& config, const StagePaths& paths = {});
std::string run_estimate(const PipelineConfig& config, const StagePaths& paths = {});
std::string run_cluster(const PipelineConfig& config, const StagePaths& paths = {});
std::string run_evaluate(const PipelineConfig& config, const StagePaths& paths = {});
std::string run_spectrum(const PipelineConfig& config, const StagePaths& paths = {});

/// Chains simulate, estimate, cluster and evaluate in-process, writes every
/// stage artifact plus the full run report, and returns the report JSON.
/// Reports are byte-identical across runs with the same config apart from the
/// "timings" object.
std::string run_pipeline(const PipelineConfig& config, const StagePaths& paths = {});

}  // namespace polydisk
