// Batch driver for the radar clutter pipeline: simulate bursts, encode range
// cells as points of the product metric space, cluster them, score against
// ground truth, and render Doppler spectra.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "polydisk/pipeline.hpp"

namespace {

// Exit codes: 1 usage, 2 config, 3 file, 4 domain.
int category_of(polydisk::ErrorKind kind) {
  using polydisk::ErrorKind;
  switch (kind) {
    case ErrorKind::ConfigError:
      return 2;
    case ErrorKind::MalformedFile:
    case ErrorKind::NonFiniteValue:
    case ErrorKind::IoError:
      return 3;
    default:
      return 4;
  }
}

const char* category_name(int code) {
  switch (code) {
    case 2: return "config";
    case 3: return "file";
    default: return "domain";
  }
}

struct CommonArgs {
  std::string config_path;
  std::string input;
  std::string output;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* config = cmd->add_option("--config", args.config_path, "Run configuration (JSON)");
  if (config_required) config->required();
  cmd->add_option("--input", args.input, "Override the stage input path");
  cmd->add_option("--output", args.output, "Override the stage output path");
  cmd->add_option("--seed", args.seed, "Override the master seed from the config");
  cmd->add_flag("--quiet", args.quiet, "Suppress the stage report on stdout");
}

polydisk::StagePaths stage_paths(const CommonArgs& args) {
  polydisk::StagePaths paths;
  if (!args.input.empty()) paths.input = args.input;
  if (!args.output.empty()) paths.output = args.output;
  return paths;
}

using StageFn = std::function<std::string(const polydisk::PipelineConfig&,
                                          const polydisk::StagePaths&)>;

int run_stage(const CommonArgs& args, const StageFn& stage) {
  try {
    const polydisk::PipelineConfig config =
        polydisk::load_pipeline_config(args.config_path, args.seed);
    const std::string report = stage(config, stage_paths(args));
    if (!args.quiet) std::cout << report << "\n";
    return 0;
  } catch (const polydisk::Error& e) {
    const int code = category_of(e.kind());
    std::cerr << "error [" << category_name(code) << "]: " << e.what() << "\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error [domain]: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-geometric clustering of pulsed radar range cells"};
  app.require_subcommand(1);

  CommonArgs args;
  StageFn stage;

  auto* simulate = app.add_subcommand("simulate", "Generate a labeled synthetic burst");
  add_common(simulate, args, true);
  simulate->callback([&] { stage = polydisk::run_simulate; });

  auto* estimate =
      app.add_subcommand("estimate", "Encode burst cells as reflection-coefficient points");
  add_common(estimate, args, true);
  estimate->callback([&] { stage = polydisk::run_estimate; });

  auto* cluster = app.add_subcommand("cluster", "Metric k-means over encoded points");
  add_common(cluster, args, true);
  cluster->callback([&] { stage = polydisk::run_cluster; });

  auto* evaluate =
      app.add_subcommand("evaluate", "Score a clustering against ground-truth labels");
  add_common(evaluate, args, true);
  evaluate->callback([&] { stage = polydisk::run_evaluate; });

  auto* pipeline = app.add_subcommand("pipeline", "Run simulate, estimate, cluster and evaluate");
  add_common(pipeline, args, true);
  pipeline->callback([&] { stage = polydisk::run_pipeline; });

  auto* spectrum =
      app.add_subcommand("spectrum", "Doppler spectrum of the barycenter of a point set");
  add_common(spectrum, args, true);
  spectrum->callback([&] { stage = polydisk::run_spectrum; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // usage errors exit 1, --help exits 0
  }
  return run_stage(args, stage);
}
