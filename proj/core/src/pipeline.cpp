#include "polydisk/pipeline.hpp"

#include <chrono>
#include <cmath>

#include <json.hpp>

#include "polydisk/evaluate.hpp"
#include "polydisk/rng.hpp"

namespace polydisk {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  require(j.is_object(), ErrorKind::ConfigError, where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (const char* name : allowed) {
      if (key == name) {
        known = true;
        break;
      }
    }
    require(known, ErrorKind::ConfigError, where + ": unknown key '" + key + "'");
  }
}

double get_number(const json& j, const char* key, const std::string& where) {
  require(j.contains(key) && j[key].is_number(), ErrorKind::ConfigError,
          where + ": missing numeric '" + std::string(key) + "'");
  return j[key].get<double>();
}

Complex parse_complex(const json& j, const std::string& where) {
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
          ErrorKind::ConfigError, where + ": expected a [re, im] pair");
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

ClassSpec parse_class(const json& j, const std::string& where) {
  check_keys(j, {"name", "p0", "mu", "texture_shape", "n_cells"}, where);
  ClassSpec cls;
  if (j.contains("name")) {
    require(j["name"].is_string(), ErrorKind::ConfigError, where + ": 'name' must be a string");
    cls.name = j["name"].get<std::string>();
  }
  cls.p0 = get_number(j, "p0", where);
  require(j.contains("mu") && j["mu"].is_array(), ErrorKind::ConfigError,
          where + ": missing array 'mu'");
  for (std::size_t k = 0; k < j["mu"].size(); ++k) {
    cls.mu.push_back(parse_complex(j["mu"][k], where + ".mu[" + std::to_string(k) + "]"));
  }
  if (j.contains("texture_shape") && !j["texture_shape"].is_null()) {
    require(j["texture_shape"].is_number(), ErrorKind::ConfigError,
            where + ": 'texture_shape' must be a number or null");
    cls.texture_shape = j["texture_shape"].get<double>();
  }
  require(j.contains("n_cells") && j["n_cells"].is_number_integer(), ErrorKind::ConfigError,
          where + ": missing integer 'n_cells'");
  cls.n_cells = j["n_cells"].get<int>();
  return cls;
}

json echo_config(const PipelineConfig& config) {
  json scenario;
  scenario["seed"] = config.scenario.seed;
  scenario["n_pulses"] = config.scenario.n_pulses;
  json classes = json::array();
  for (const ClassSpec& cls : config.scenario.classes) {
    json c;
    c["name"] = cls.name;
    c["p0"] = cls.p0;
    json mu = json::array();
    for (const Complex& m : cls.mu) mu.push_back(complex_to_json(m));
    c["mu"] = std::move(mu);
    if (cls.texture_shape) {
      c["texture_shape"] = *cls.texture_shape;
    } else {
      c["texture_shape"] = nullptr;
    }
    c["n_cells"] = cls.n_cells;
    classes.push_back(std::move(c));
  }
  scenario["classes"] = std::move(classes);

  json j;
  j["seed"] = config.seed;
  j["scenario"] = std::move(scenario);
  j["burg"] = {{"order", config.burg.order == 0 ? json("full") : json(config.burg.order)},
               {"gamma", config.burg.gamma}};
  j["kmeans"] = {{"k", config.kmeans.k},
                 {"seed", config.kmeans.seed},
                 {"max_iter", config.kmeans.max_iter},
                 {"tol", config.kmeans.tol},
                 {"init", config.kmeans.init == KmeansInit::random_points ? "random" : "pp"},
                 {"restarts", config.kmeans.restarts}};
  j["spectrum"] = {
      {"n_freq", config.spectrum.n_freq},
      {"statistic", config.spectrum.statistic == SpectrumStatistic::median ? "median" : "mean"}};
  j["io"] = {{"burst", config.io.burst},     {"labels", config.io.labels},
             {"points", config.io.points},   {"model", config.io.model},
             {"report", config.io.report},   {"spectrum", config.io.spectrum}};
  return j;
}

json point_to_json(const ProductPoint& point) {
  json j;
  j["log_p0"] = point.log_p0;
  json mu = json::array();
  for (const Complex& m : point.mu) mu.push_back(complex_to_json(m));
  j["mu"] = std::move(mu);
  j["n_pulses"] = point.n_pulses;
  return j;
}

json model_to_json(const ClusterModel& model) {
  json j;
  j["k"] = model.k;
  json centroids = json::array();
  for (const ProductPoint& c : model.centroids) centroids.push_back(point_to_json(c));
  j["centroids"] = std::move(centroids);
  j["labels"] = model.labels;
  j["inertia"] = model.inertia;
  j["n_iter"] = model.n_iter;
  j["converged"] = model.converged;
  j["inertia_trace"] = model.inertia_trace;
  j["karcher_failures"] = model.karcher_failures;
  return j;
}

json eval_to_json(const EvalReport& report) {
  json j;
  j["confusion"] = report.confusion;
  j["permutation"] = report.permutation;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f1"] = report.f1;
  json per_class = json::array();
  for (const PerClassScore& s : report.per_class) {
    per_class.push_back({{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}});
  }
  j["per_class"] = std::move(per_class);
  return j;
}

int resolve_burg_order(const PipelineConfig& config, int n_pulses) {
  const int order = config.burg.order == 0 ? n_pulses - 1 : config.burg.order;
  require(order >= 1 && order <= n_pulses - 1, ErrorKind::ConfigError,
          "burg order " + std::to_string(order) + " is out of range for " +
              std::to_string(n_pulses) + " pulses");
  return order;
}

std::vector<ProductPoint> estimate_points(const Burst& burst, const PipelineConfig& config) {
  const int n_pulses = static_cast<int>(burst.rows());
  require(n_pulses >= 2, ErrorKind::InvalidOrder, "burst needs at least two pulses");
  const int order = resolve_burg_order(config, n_pulses);
  std::vector<ProductPoint> points;
  points.reserve(burst.cols());
  std::vector<Complex> series(n_pulses);
  for (Eigen::Index j = 0; j < burst.cols(); ++j) {
    for (int t = 0; t < n_pulses; ++t) series[t] = burst(t, j);
    points.push_back(
        make_product_point(burg_regularized(series, order, config.burg.gamma), n_pulses));
  }
  return points;
}

ClusterModel cluster_points(const std::vector<ProductPoint>& points,
                            const PipelineConfig& config) {
  return kmeans(points, config.kmeans);
}

ProductPoint spectrum_center(const std::vector<ProductPoint>& points,
                             const PipelineConfig& config) {
  if (points.size() == 1) return points[0];
  const std::vector<double> weights(points.size(), 1.0 / points.size());
  const BarycenterResult result =
      config.spectrum.statistic == SpectrumStatistic::median
          ? frechet_median(points, weights)
          : karcher_mean(points, weights);
  return result.point;
}

std::string render_spectrum_csv(const ProductPoint& center, int n_freq) {
  const ArModel model = levinson(ReflectionPoint{center.log_p0, center.mu});
  const std::vector<double> psd = doppler_spectrum(model, n_freq);
  std::string out = "frequency,power\n";
  char buf[80];
  for (int j = 0; j < n_freq; ++j) {
    const double f = static_cast<double>(j) / n_freq - 0.5;
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", f, psd[j]);
    out += buf;
  }
  return out;
}

}  // namespace

PipelineConfig parse_pipeline_config(const std::string& text,
                                     std::optional<std::uint64_t> seed_override) {
  json j = json::parse(text, nullptr, false);
  require(!j.is_discarded(), ErrorKind::ConfigError, "config is not valid JSON");
  check_keys(j, {"seed", "scenario", "burg", "kmeans", "spectrum", "io"}, "config");

  PipelineConfig config;
  if (j.contains("seed")) {
    require(j["seed"].is_number_unsigned() || j["seed"].is_number_integer(),
            ErrorKind::ConfigError, "config: 'seed' must be an integer");
    config.seed = j["seed"].get<std::uint64_t>();
  }
  if (seed_override) config.seed = *seed_override;

  require(j.contains("scenario"), ErrorKind::ConfigError, "config: missing 'scenario'");
  const json& sc = j["scenario"];
  check_keys(sc, {"seed", "n_pulses", "classes"}, "scenario");
  config.scenario.seed = derive_seed(config.seed, std::string_view("simulate"));
  if (sc.contains("seed")) {
    require(sc["seed"].is_number_unsigned() || sc["seed"].is_number_integer(),
            ErrorKind::ConfigError, "scenario: 'seed' must be an integer");
    config.scenario.seed = sc["seed"].get<std::uint64_t>();
  }
  require(sc.contains("n_pulses") && sc["n_pulses"].is_number_integer(), ErrorKind::ConfigError,
          "scenario: missing integer 'n_pulses'");
  config.scenario.n_pulses = sc["n_pulses"].get<int>();
  require(sc.contains("classes") && sc["classes"].is_array() && !sc["classes"].empty(),
          ErrorKind::ConfigError, "scenario: missing non-empty 'classes'");
  for (std::size_t c = 0; c < sc["classes"].size(); ++c) {
    config.scenario.classes.push_back(
        parse_class(sc["classes"][c], "scenario.classes[" + std::to_string(c) + "]"));
  }
  validate_scenario(config.scenario);

  if (j.contains("burg")) {
    const json& burg = j["burg"];
    check_keys(burg, {"order", "gamma"}, "burg");
    if (burg.contains("order")) {
      if (burg["order"].is_string()) {
        require(burg["order"].get<std::string>() == "full", ErrorKind::ConfigError,
                "burg: 'order' must be a positive integer or \"full\"");
        config.burg.order = 0;
      } else {
        require(burg["order"].is_number_integer() && burg["order"].get<int>() >= 1,
                ErrorKind::ConfigError, "burg: 'order' must be a positive integer or \"full\"");
        config.burg.order = burg["order"].get<int>();
      }
    }
    if (burg.contains("gamma")) {
      config.burg.gamma = get_number(burg, "gamma", "burg");
      require(config.burg.gamma >= 0.0, ErrorKind::ConfigError, "burg: gamma must be >= 0");
    }
  }

  config.kmeans.seed = derive_seed(config.seed, std::string_view("cluster"));
  if (j.contains("kmeans")) {
    const json& km = j["kmeans"];
    check_keys(km, {"k", "seed", "max_iter", "tol", "init", "restarts"}, "kmeans");
    if (km.contains("k")) {
      require(km["k"].is_number_integer() && km["k"].get<int>() >= 1, ErrorKind::ConfigError,
              "kmeans: 'k' must be a positive integer");
      config.kmeans.k = km["k"].get<int>();
    }
    if (km.contains("seed")) {
      require(km["seed"].is_number_unsigned() || km["seed"].is_number_integer(),
              ErrorKind::ConfigError, "kmeans: 'seed' must be an integer");
      config.kmeans.seed = km["seed"].get<std::uint64_t>();
    }
    if (km.contains("max_iter")) {
      require(km["max_iter"].is_number_integer() && km["max_iter"].get<int>() >= 1,
              ErrorKind::ConfigError, "kmeans: 'max_iter' must be a positive integer");
      config.kmeans.max_iter = km["max_iter"].get<int>();
    }
    if (km.contains("tol")) {
      config.kmeans.tol = get_number(km, "tol", "kmeans");
      require(config.kmeans.tol >= 0.0, ErrorKind::ConfigError, "kmeans: tol must be >= 0");
    }
    if (km.contains("init")) {
      require(km["init"].is_string(), ErrorKind::ConfigError, "kmeans: 'init' must be a string");
      const std::string init = km["init"].get<std::string>();
      if (init == "random") {
        config.kmeans.init = KmeansInit::random_points;
      } else if (init == "pp") {
        config.kmeans.init = KmeansInit::plus_plus;
      } else {
        fail(ErrorKind::ConfigError, "kmeans: 'init' must be \"random\" or \"pp\"");
      }
    }
    if (km.contains("restarts")) {
      require(km["restarts"].is_number_integer() && km["restarts"].get<int>() >= 1,
              ErrorKind::ConfigError, "kmeans: 'restarts' must be a positive integer");
      config.kmeans.restarts = km["restarts"].get<int>();
    }
  }

  if (j.contains("spectrum")) {
    const json& sp = j["spectrum"];
    check_keys(sp, {"n_freq", "statistic"}, "spectrum");
    if (sp.contains("n_freq")) {
      require(sp["n_freq"].is_number_integer() && sp["n_freq"].get<int>() >= 2,
              ErrorKind::ConfigError, "spectrum: 'n_freq' must be at least 2");
      config.spectrum.n_freq = sp["n_freq"].get<int>();
    }
    if (sp.contains("statistic")) {
      require(sp["statistic"].is_string(), ErrorKind::ConfigError,
              "spectrum: 'statistic' must be a string");
      const std::string stat = sp["statistic"].get<std::string>();
      if (stat == "median") {
        config.spectrum.statistic = SpectrumStatistic::median;
      } else if (stat == "mean") {
        config.spectrum.statistic = SpectrumStatistic::mean;
      } else {
        fail(ErrorKind::ConfigError, "spectrum: 'statistic' must be \"median\" or \"mean\"");
      }
    }
  }

  if (j.contains("io")) {
    const json& paths = j["io"];
    check_keys(paths, {"burst", "labels", "points", "model", "report", "spectrum"}, "io");
    const auto take = [&](const char* key, std::string& target) {
      if (!paths.contains(key)) return;
      require(paths[key].is_string(), ErrorKind::ConfigError,
              std::string("io: '") + key + "' must be a string");
      target = paths[key].get<std::string>();
    };
    take("burst", config.io.burst);
    take("labels", config.io.labels);
    take("points", config.io.points);
    take("model", config.io.model);
    take("report", config.io.report);
    take("spectrum", config.io.spectrum);
  }

  config.echo = echo_config(config).dump();
  return config;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path,
                                    std::optional<std::uint64_t> seed_override) {
  return parse_pipeline_config(io::read_file(path), seed_override);
}

std::string run_simulate(const PipelineConfig& config, const StagePaths& paths) {
  const auto start = Clock::now();
  const SimulatedBurst sim = simulate_scenario(config.scenario);
  const std::filesystem::path burst_path = paths.output.value_or(config.io.burst);

  io::write_burst(sim.burst, burst_path);
  io::write_labels(sim.labels, config.io.labels);

  json report;
  report["stage"] = "simulate";
  report["n_pulses"] = sim.burst.rows();
  report["n_cells"] = sim.burst.cols();
  report["burst"] = burst_path.string();
  report["labels"] = config.io.labels;
  report["seconds"] = seconds_since(start);
  return report.dump();
}

std::string run_estimate(const PipelineConfig& config, const StagePaths& paths) {
  const auto start = Clock::now();
  const std::filesystem::path input = paths.input.value_or(config.io.burst);
  const std::filesystem::path output = paths.output.value_or(config.io.points);

  const Burst burst = io::read_burst(input);
  const std::vector<ProductPoint> points = estimate_points(burst, config);
  io::write_points(points, output);

  json report;
  report["stage"] = "estimate";
  report["n_points"] = points.size();
  report["order"] = points.front().order();
  report["points"] = output.string();
  report["seconds"] = seconds_since(start);
  return report.dump();
}

std::string run_cluster(const PipelineConfig& config, const StagePaths& paths) {
  const auto start = Clock::now();
  const std::filesystem::path input = paths.input.value_or(config.io.points);
  const std::filesystem::path output = paths.output.value_or(config.io.model);

  const std::vector<ProductPoint> points = io::read_points(input);
  const ClusterModel model = cluster_points(points, config);
  io::write_file(output, model_to_json(model).dump());

  json report;
  report["stage"] = "cluster";
  report["k"] = model.k;
  report["inertia"] = model.inertia;
  report["n_iter"] = model.n_iter;
  report["converged"] = model.converged;
  report["model"] = output.string();
  report["seconds"] = seconds_since(start);
  return report.dump();
}

std::string run_evaluate(const PipelineConfig& config, const StagePaths& paths) {
  const auto start = Clock::now();
  const std::filesystem::path input = paths.input.value_or(config.io.model);
  const std::filesystem::path output = paths.output.value_or(config.io.report);

  const json model = json::parse(io::read_file(input), nullptr, false);
  require(!model.is_discarded() && model.is_object() && model.contains("labels"),
          ErrorKind::MalformedFile, input.string() + ": expected a model with 'labels'");
  const std::vector<int> predicted = model["labels"].get<std::vector<int>>();
  const std::vector<int> truth = io::read_labels(config.io.labels);
  const EvalReport eval = best_permutation_score(truth, predicted);
  io::write_file(output, eval_to_json(eval).dump());

  json report;
  report["stage"] = "evaluate";
  report["f1"] = eval.f1;
  report["report"] = output.string();
  report["seconds"] = seconds_since(start);
  return report.dump();
}

std::string run_spectrum(const PipelineConfig& config, const StagePaths& paths) {
  const auto start = Clock::now();
  const std::filesystem::path input = paths.input.value_or(config.io.points);
  const std::filesystem::path output = paths.output.value_or(config.io.spectrum);

  const std::vector<ProductPoint> points = io::read_points(input);
  const ProductPoint center = spectrum_center(points, config);
  io::write_file(output, render_spectrum_csv(center, config.spectrum.n_freq));

  json report;
  report["stage"] = "spectrum";
  report["n_points"] = points.size();
  report["n_freq"] = config.spectrum.n_freq;
  report["statistic"] =
      config.spectrum.statistic == SpectrumStatistic::median ? "median" : "mean";
  report["spectrum"] = output.string();
  report["seconds"] = seconds_since(start);
  return report.dump();
}

std::string run_pipeline(const PipelineConfig& config, const StagePaths& paths) {
  const std::filesystem::path report_path = paths.output.value_or(config.io.report);
  json timings;

  auto start = Clock::now();
  const SimulatedBurst sim = simulate_scenario(config.scenario);
  timings["simulate"] = seconds_since(start);

  start = Clock::now();
  const std::vector<ProductPoint> points = estimate_points(sim.burst, config);
  timings["estimate"] = seconds_since(start);

  start = Clock::now();
  const ClusterModel model = cluster_points(points, config);
  timings["cluster"] = seconds_since(start);

  start = Clock::now();
  const EvalReport eval = best_permutation_score(sim.labels, model.labels);
  timings["evaluate"] = seconds_since(start);

  io::write_burst(sim.burst, config.io.burst);
  io::write_labels(sim.labels, config.io.labels);
  io::write_points(points, config.io.points);
  io::write_file(config.io.model, model_to_json(model).dump());

  json report;
  report["config"] = json::parse(config.echo);
  report["labels"] = model.labels;
  json centroids = json::array();
  for (const ProductPoint& c : model.centroids) centroids.push_back(point_to_json(c));
  report["centroids"] = std::move(centroids);
  report["inertia"] = model.inertia;
  report["n_iter"] = model.n_iter;
  report["converged"] = model.converged;
  report["karcher_failures"] = model.karcher_failures;
  report["eval"] = eval_to_json(eval);
  report["timings"] = std::move(timings);

  const std::string text = report.dump();
  io::write_file(report_path, text);
  return text;
}

}  // namespace polydisk
