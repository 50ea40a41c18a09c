/**
 * @file main.cpp
 * @brief Command-line front end: closed-loop runs, side-by-side controller
 *        comparison, stability certification, gain tuning, preset listing.
 */
#include "quadnlpid/config.hpp"
#include "quadnlpid/metrics.hpp"
#include "quadnlpid/presets.hpp"
#include "quadnlpid/stability.hpp"
#include "quadnlpid/tuning.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace quadnlpid;

namespace {

struct CommonFlags {
  std::vector<std::string> configs;
  std::string out_dir;
  std::vector<std::string> preset_controllers;
  std::string preset_trajectory;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<std::uint64_t> seed;
  std::string format = "report";
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool multi_config,
                      bool multi_controller) {
  auto* config = cmd->add_option("--config", flags.configs, "scenario config file (JSON)");
  if (!multi_config) config->expected(0, 1);
  cmd->add_option("--out", flags.out_dir, "output directory");
  auto* pc = cmd->add_option("--preset-controller", flags.preset_controllers,
                             "built-in controller preset name");
  if (!multi_controller) pc->expected(0, 1);
  cmd->add_option("--preset-trajectory", flags.preset_trajectory,
                  "built-in trajectory preset name");
  cmd->add_option("--dt", flags.dt, "integration step, s");
  cmd->add_option("--t-final", flags.t_final, "simulation horizon, s");
  cmd->add_option("--seed", flags.seed, "random seed recorded in the manifest");
  cmd->add_option("--format", flags.format, "what to print on stdout")
      ->check(CLI::IsMember({"csv", "report"}));
}

json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config: " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
}

/// Folds CLI overrides into a (possibly empty) config document so the
/// resolved config in the manifest reflects exactly what ran.
json overlay(json doc, const CommonFlags& flags, std::size_t controller_index) {
  if (controller_index < flags.preset_controllers.size()) {
    doc["controller"] = json{{"preset", flags.preset_controllers[controller_index]}};
  }
  if (!flags.preset_trajectory.empty()) {
    doc["trajectory"] = json{{"preset", flags.preset_trajectory}};
  }
  if (flags.dt) doc["sim"]["dt"] = *flags.dt;
  if (flags.t_final) doc["sim"]["t_final"] = *flags.t_final;
  if (flags.seed) doc["sim"]["seed"] = *flags.seed;
  if (!flags.out_dir.empty()) doc["output"]["dir"] = flags.out_dir;
  return doc;
}

struct RunProduct {
  LoadedScenario loaded;
  SimLog log;
  MetricsReport metrics;
};

RunProduct execute(const json& doc) {
  RunProduct product;
  product.loaded = scenario_from_json(doc);
  product.log = simulate(product.loaded.scenario);
  product.metrics = compute_metrics(product.log, product.loaded.scenario.trajectory);
  return product;
}

fs::path prepare_dir(const std::string& dir) {
  const fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
  fs::create_directories(p);
  return p;
}

int cmd_run(const CommonFlags& flags) {
  json doc = flags.configs.empty() ? json::object() : load_json_file(flags.configs[0]);
  doc = overlay(std::move(doc), flags, 0);
  RunProduct product = execute(doc);

  const fs::path dir = prepare_dir(product.loaded.output.dir);
  const auto& out = product.loaded.output;
  write_csv(product.log, (dir / out.timeseries).string());
  write_report(product.metrics, (dir / out.report).string());
  const json manifest = make_manifest(product.loaded.resolved, product.loaded.seed,
                                      {out.timeseries, out.report, out.manifest});
  std::ofstream mf(dir / out.manifest);
  mf << manifest.dump(2) << "\n";

  if (flags.format == "csv") {
    write_csv(product.log, std::cout);
  } else {
    write_report(product.metrics, std::cout);
  }
  if (product.log.diverged) {
    std::cerr << "warning: run diverged at t = " << product.log.divergence_time << " s\n";
  }
  return 0;
}

int cmd_compare(const CommonFlags& flags) {
  json doc_a, doc_b;
  std::string label_a, label_b;
  if (flags.configs.size() == 2) {
    doc_a = overlay(load_json_file(flags.configs[0]), flags, 0);
    doc_b = overlay(load_json_file(flags.configs[1]), flags, 1);
    label_a = flags.configs[0];
    label_b = flags.configs[1];
  } else if (flags.configs.empty() && flags.preset_controllers.size() == 2) {
    doc_a = overlay(json::object(), flags, 0);
    doc_b = overlay(json::object(), flags, 1);
    label_a = flags.preset_controllers[0];
    label_b = flags.preset_controllers[1];
  } else {
    throw ConfigError("compare needs two --config files or two --preset-controller names");
  }

  RunProduct a = execute(doc_a);
  RunProduct b = execute(doc_b);

  const std::string dir_name = !flags.out_dir.empty() ? flags.out_dir : a.loaded.output.dir;
  const fs::path dir = prepare_dir(dir_name);
  write_csv(a.log, (dir / "timeseries_a.csv").string());
  write_csv(b.log, (dir / "timeseries_b.csv").string());
  {
    std::ofstream f(dir / "compare.txt");
    if (!f) throw ConfigError("cannot open for writing: " + (dir / "compare.txt").string());
    write_compare_report(a.metrics, b.metrics, label_a, label_b, f);
  }
  const json manifest =
      make_manifest(json{{"a", a.loaded.resolved}, {"b", b.loaded.resolved}},
                    a.loaded.seed, {"timeseries_a.csv", "timeseries_b.csv", "compare.txt"});
  std::ofstream mf(dir / "manifest.json");
  mf << manifest.dump(2) << "\n";

  write_compare_report(a.metrics, b.metrics, label_a, label_b, std::cout);
  return 0;
}

int cmd_stability(const CommonFlags& flags) {
  json doc = flags.configs.empty() ? json::object() : load_json_file(flags.configs[0]);
  doc = overlay(std::move(doc), flags, 0);
  const LoadedScenario loaded = scenario_from_json(doc);
  const auto reports = verify_bank(loaded.scenario.gains, loaded.scenario.params);

  bool all_stable = true;
  json jreports = json::array();
  std::printf("subsystem h stable k21 k21_required inequality max_alpha_dev\n");
  for (const auto& r : reports) {
    all_stable = all_stable && r.stable;
    std::printf("%s %.9g %s %.9g %.9g %s %.9g\n", r.name.c_str(), r.h,
                r.stable ? "stable" : "UNSTABLE", r.k21, r.k21_required,
                r.inequality_holds ? "holds" : "violated", r.max_alpha_deviation);
    json corners = json::array();
    for (const auto& c : r.corner_results) {
      corners.push_back(json{{"k1", c.k1},
                             {"k2", c.k2},
                             {"k3", c.k3},
                             {"delta1", c.delta1},
                             {"delta2", c.delta2},
                             {"delta3", c.delta3},
                             {"stable", c.stable}});
      if (!c.stable) {
        const char* minor = c.delta1 <= 0 ? "delta1" : (c.delta2 <= 0 ? "delta2" : "delta3");
        std::printf("  corner (%.9g, %.9g, %.9g): %s <= 0\n", c.k1, c.k2, c.k3, minor);
      }
    }
    jreports.push_back(json{{"name", r.name},
                            {"h", r.h},
                            {"stable", r.stable},
                            {"k21", r.k21},
                            {"k21_required", r.k21_required},
                            {"inequality_holds", r.inequality_holds},
                            {"max_alpha_deviation", r.max_alpha_deviation},
                            {"corners", corners}});
  }
  std::printf("overall: %s\n", all_stable ? "stable" : "UNSTABLE");

  if (!flags.out_dir.empty()) {
    const fs::path dir = prepare_dir(flags.out_dir);
    std::ofstream f(dir / "stability.json");
    f << json{{"overall_stable", all_stable}, {"subsystems", jreports}}.dump(2) << "\n";
  }
  return all_stable ? 0 : 2;
}

int cmd_tune(const CommonFlags& flags) {
  json doc = flags.configs.empty() ? json::object() : load_json_file(flags.configs[0]);
  if (flags.seed) doc["ga"]["seed"] = *flags.seed;
  if (flags.dt) doc["scenario"]["sim"]["dt"] = *flags.dt;
  if (flags.t_final) doc["scenario"]["sim"]["t_final"] = *flags.t_final;
  const LoadedTuneConfig cfg = tune_from_json(doc);

  FitnessFn fitness;
  if (cfg.fitness == "sphere") {
    fitness = [](const Eigen::VectorXd& v) { return v.squaredNorm(); };
  } else {
    fitness = [&cfg](const Eigen::VectorXd& v) {
      return gain_fitness(v, cfg.family, cfg.scenario);
    };
  }

  const GaResult result = ga_optimize(cfg.ga, fitness);

  const fs::path dir = prepare_dir(flags.out_dir);
  std::vector<std::string> outputs = {"history.csv", "manifest.json"};
  {
    std::ofstream f(dir / "history.csv");
    f << "generation,best_fitness\n";
    char buf[32];
    for (std::size_t g = 0; g < result.history.size(); ++g) {
      std::snprintf(buf, sizeof buf, "%.9g", result.history[g]);
      f << g << "," << buf << "\n";
    }
  }
  if (cfg.fitness == "sphere") {
    json best = json::array();
    for (Eigen::Index i = 0; i < result.best.size(); ++i) best.push_back(result.best[i]);
    std::ofstream f(dir / "best_vector.json");
    f << json{{"best", best}, {"fitness", result.best_fitness}}.dump(2) << "\n";
    outputs.push_back("best_vector.json");
  } else {
    write_gains_file(decode_gains(result.best, cfg.family),
                     (dir / "best_gains.json").string());
    outputs.push_back("best_gains.json");
  }
  std::ofstream mf(dir / "manifest.json");
  mf << make_manifest(cfg.resolved, cfg.ga.seed, outputs).dump(2) << "\n";

  std::printf("best fitness: %.9g\n", result.best_fitness);
  return 0;
}

int cmd_presets() {
  std::printf("controller presets:\n");
  for (const auto& name : controller_preset_names()) std::printf("  %s\n", name.c_str());
  std::printf("trajectory presets:\n");
  for (const auto& name : trajectory_preset_names()) std::printf("  %s\n", name.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadrotor cascade-controller simulation and tuning toolkit"};
  app.require_subcommand(1);

  CommonFlags run_flags, compare_flags, stability_flags, tune_flags;
  auto* run = app.add_subcommand("run", "simulate one scenario and write its artifacts");
  add_common_flags(run, run_flags, false, false);
  auto* compare = app.add_subcommand("compare", "run two scenarios side by side");
  add_common_flags(compare, compare_flags, true, true);
  auto* stability = app.add_subcommand("stability", "certify gain sets");
  add_common_flags(stability, stability_flags, false, false);
  auto* tune = app.add_subcommand("tune", "search gains with the genetic algorithm");
  add_common_flags(tune, tune_flags, false, false);
  auto* presets = app.add_subcommand("presets", "list built-in presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (compare->parsed()) return cmd_compare(compare_flags);
    if (stability->parsed()) return cmd_stability(stability_flags);
    if (tune->parsed()) return cmd_tune(tune_flags);
    if (presets->parsed()) return cmd_presets();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
