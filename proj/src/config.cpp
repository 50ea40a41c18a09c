#include "quadnlpid/config.hpp"

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

namespace quadnlpid {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& context) {
  if (!obj.is_object()) throw ConfigError(context + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) {
      throw ConfigError(context + ": unknown key '" + key + "'");
    }
  }
}

double get_num(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError("expected a number for key '" + key + "'");
  return obj[key].get<double>();
}

double require_num(const json& obj, const std::string& key, const std::string& context) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw ConfigError(context + ": missing numeric key '" + key + "'");
  }
  return obj[key].get<double>();
}

QuadParams parse_params(const json& j) {
  check_keys(j, {"Ix", "Iy", "Iz", "g", "m", "b", "d", "l"}, "params");
  QuadParams p;
  p.Ix = get_num(j, "Ix", p.Ix);
  p.Iy = get_num(j, "Iy", p.Iy);
  p.Iz = get_num(j, "Iz", p.Iz);
  p.g = get_num(j, "g", p.g);
  p.m = get_num(j, "m", p.m);
  p.b = get_num(j, "b", p.b);
  p.d = get_num(j, "d", p.d);
  p.l = get_num(j, "l", p.l);
  p.validate();
  return p;
}

json params_to_json(const QuadParams& p) {
  return json{{"Ix", p.Ix}, {"Iy", p.Iy}, {"Iz", p.Iz}, {"g", p.g},
              {"m", p.m},   {"b", p.b},   {"d", p.d},   {"l", p.l}};
}

LPIDGains parse_lpid(const json& j, const std::string& context) {
  check_keys(j, {"kp", "ki", "kd"}, context);
  LPIDGains g;
  g.kp = require_num(j, "kp", context);
  g.ki = require_num(j, "ki", context);
  g.kd = require_num(j, "kd", context);
  return g;
}

NLPIDGains parse_nlpid(const json& j, const std::string& context) {
  check_keys(j,
             {"k11", "k12", "k21", "k22", "k31", "k32", "mu1", "mu2", "mu3", "alpha1",
              "alpha2", "alpha3"},
             context);
  NLPIDGains g;
  g.k11 = require_num(j, "k11", context);
  g.k12 = require_num(j, "k12", context);
  g.k21 = require_num(j, "k21", context);
  g.k22 = require_num(j, "k22", context);
  g.k31 = require_num(j, "k31", context);
  g.k32 = require_num(j, "k32", context);
  g.mu1 = require_num(j, "mu1", context);
  g.mu2 = require_num(j, "mu2", context);
  g.mu3 = require_num(j, "mu3", context);
  g.alpha1 = require_num(j, "alpha1", context);
  g.alpha2 = require_num(j, "alpha2", context);
  g.alpha3 = require_num(j, "alpha3", context);
  return g;
}

json lpid_to_json(const LPIDGains& g) {
  return json{{"kp", g.kp}, {"ki", g.ki}, {"kd", g.kd}};
}

json nlpid_to_json(const NLPIDGains& g) {
  return json{{"k11", g.k11},       {"k12", g.k12},       {"k21", g.k21},
              {"k22", g.k22},       {"k31", g.k31},       {"k32", g.k32},
              {"mu1", g.mu1},       {"mu2", g.mu2},       {"mu3", g.mu3},
              {"alpha1", g.alpha1}, {"alpha2", g.alpha2}, {"alpha3", g.alpha3}};
}

constexpr const char* kChannelNames[6] = {"x", "y", "z", "phi", "theta", "psi"};

TrajectoryKind parse_kind(const std::string& kind) {
  if (kind == "step") return TrajectoryKind::Step;
  if (kind == "circular") return TrajectoryKind::Circular;
  if (kind == "helical") return TrajectoryKind::Helical;
  if (kind == "square") return TrajectoryKind::Square;
  throw ConfigError("trajectory: unknown kind '" + kind + "'");
}

std::string kind_name(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::Step: return "step";
    case TrajectoryKind::Circular: return "circular";
    case TrajectoryKind::Helical: return "helical";
    case TrajectoryKind::Square: return "square";
  }
  return "step";
}

TrajectorySpec parse_trajectory(const json& j) {
  if (j.contains("preset")) {
    check_keys(j, {"preset"}, "trajectory");
    if (!j["preset"].is_string()) throw ConfigError("trajectory: preset must be a string");
    return trajectory_preset(j["preset"].get<std::string>());
  }
  check_keys(j,
             {"kind", "t_final", "amplitude", "omega", "activation_time", "climb_rate",
              "z_step", "psi_step", "x_on", "x_off", "y_on", "y_off"},
             "trajectory");
  TrajectorySpec spec;
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("trajectory: custom trajectories need a string 'kind'");
  }
  spec.kind = parse_kind(j["kind"].get<std::string>());
  spec.t_final = get_num(j, "t_final", spec.t_final);
  spec.amplitude = get_num(j, "amplitude", spec.amplitude);
  spec.omega = get_num(j, "omega", spec.omega);
  spec.activation_time = get_num(j, "activation_time", spec.activation_time);
  spec.climb_rate = get_num(j, "climb_rate", spec.climb_rate);
  spec.z_step = get_num(j, "z_step", spec.z_step);
  spec.psi_step = get_num(j, "psi_step", spec.psi_step);
  spec.x_on = get_num(j, "x_on", spec.x_on);
  spec.x_off = get_num(j, "x_off", spec.x_off);
  spec.y_on = get_num(j, "y_on", spec.y_on);
  spec.y_off = get_num(j, "y_off", spec.y_off);
  spec.validate();
  return spec;
}

json trajectory_to_json(const TrajectorySpec& s) {
  return json{{"kind", kind_name(s.kind)},
              {"t_final", s.t_final},
              {"amplitude", s.amplitude},
              {"omega", s.omega},
              {"activation_time", s.activation_time},
              {"climb_rate", s.climb_rate},
              {"z_step", s.z_step},
              {"psi_step", s.psi_step},
              {"x_on", s.x_on},
              {"x_off", s.x_off},
              {"y_on", s.y_on},
              {"y_off", s.y_off}};
}

RigidBodyState parse_initial_state(const json& j) {
  check_keys(j, {"x", "y", "z", "phi", "theta", "psi", "u", "v", "w", "p", "q", "r"},
             "sim.initial_state");
  RigidBodyState s;
  s.x = get_num(j, "x", 0.0);
  s.y = get_num(j, "y", 0.0);
  s.z = get_num(j, "z", 0.0);
  s.phi = get_num(j, "phi", 0.0);
  s.theta = get_num(j, "theta", 0.0);
  s.psi = get_num(j, "psi", 0.0);
  s.u = get_num(j, "u", 0.0);
  s.v = get_num(j, "v", 0.0);
  s.w = get_num(j, "w", 0.0);
  s.p = get_num(j, "p", 0.0);
  s.q = get_num(j, "q", 0.0);
  s.r = get_num(j, "r", 0.0);
  return s;
}

json state_to_json(const RigidBodyState& s) {
  return json{{"x", s.x},     {"y", s.y},         {"z", s.z},   {"phi", s.phi},
              {"theta", s.theta}, {"psi", s.psi}, {"u", s.u},   {"v", s.v},
              {"w", s.w},     {"p", s.p},         {"q", s.q},   {"r", s.r}};
}

}  // namespace

std::array<ChannelGains, 6> gains_from_json(const json& doc, ControllerFamily& family_out) {
  check_keys(doc, {"family", "channels"}, "gains");
  if (!doc.contains("family") || !doc["family"].is_string()) {
    throw ConfigError("gains: missing string 'family'");
  }
  const std::string family = doc["family"].get<std::string>();
  if (family != "lpid" && family != "nlpid") {
    throw ConfigError("gains: family must be 'lpid' or 'nlpid'");
  }
  family_out = family == "lpid" ? ControllerFamily::LPID : ControllerFamily::NLPID;
  if (!doc.contains("channels")) throw ConfigError("gains: missing 'channels'");
  const json& channels = doc["channels"];
  check_keys(channels, {"x", "y", "z", "phi", "theta", "psi"}, "gains.channels");
  std::array<ChannelGains, 6> out;
  for (std::size_t i = 0; i < 6; ++i) {
    const char* name = kChannelNames[i];
    if (!channels.contains(name)) {
      throw ConfigError(std::string("gains.channels: missing channel '") + name + "'");
    }
    const std::string context = std::string("gains.channels.") + name;
    if (family_out == ControllerFamily::LPID) {
      out[i] = parse_lpid(channels[name], context);
    } else {
      out[i] = parse_nlpid(channels[name], context);
    }
  }
  return out;
}

json gains_to_json(const std::array<ChannelGains, 6>& gains) {
  const bool lpid = std::holds_alternative<LPIDGains>(gains[0]);
  json channels = json::object();
  for (std::size_t i = 0; i < 6; ++i) {
    if (lpid != std::holds_alternative<LPIDGains>(gains[i])) {
      throw ConfigError("gains: mixed families are not serializable");
    }
    channels[kChannelNames[i]] =
        lpid ? lpid_to_json(std::get<LPIDGains>(gains[i]))
             : nlpid_to_json(std::get<NLPIDGains>(gains[i]));
  }
  return json{{"family", lpid ? "lpid" : "nlpid"}, {"channels", channels}};
}

std::array<ChannelGains, 6> load_gains_file(const std::string& path,
                                            ControllerFamily& family_out) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read gains file: " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("gains file " + path + ": " + e.what());
  }
  return gains_from_json(doc, family_out);
}

void write_gains_file(const std::array<ChannelGains, 6>& gains, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  f << gains_to_json(gains).dump(2) << "\n";
}

LoadedScenario scenario_from_json(const json& doc) {
  check_keys(doc, {"params", "controller", "trajectory", "sim", "output"}, "config");
  LoadedScenario loaded;
  Scenario& sc = loaded.scenario;

  if (doc.contains("params")) sc.params = parse_params(doc["params"]);

  if (doc.contains("controller")) {
    const json& c = doc["controller"];
    check_keys(c, {"preset", "gains_file", "family", "channels"}, "controller");
    if (c.contains("preset")) {
      if (c.size() != 1) throw ConfigError("controller: preset excludes other keys");
      if (!c["preset"].is_string()) throw ConfigError("controller: preset must be a string");
      loaded.controller_label = c["preset"].get<std::string>();
      sc.gains = controller_preset(loaded.controller_label);
    } else if (c.contains("gains_file")) {
      if (c.size() != 1) throw ConfigError("controller: gains_file excludes other keys");
      if (!c["gains_file"].is_string()) {
        throw ConfigError("controller: gains_file must be a string");
      }
      ControllerFamily family;
      sc.gains = load_gains_file(c["gains_file"].get<std::string>(), family);
      loaded.controller_label = "file:" + c["gains_file"].get<std::string>();
    } else {
      ControllerFamily family;
      sc.gains = gains_from_json(c, family);
      loaded.controller_label = "custom";
    }
  } else {
    loaded.controller_label = "paper-nlpid";
    sc.gains = controller_preset(loaded.controller_label);
  }

  if (doc.contains("trajectory")) {
    sc.trajectory = parse_trajectory(doc["trajectory"]);
    loaded.trajectory_label = doc["trajectory"].contains("preset")
                                  ? doc["trajectory"]["preset"].get<std::string>()
                                  : "custom";
  } else {
    loaded.trajectory_label = "step";
    sc.trajectory = trajectory_preset(loaded.trajectory_label);
  }

  sc.initial_state = benchmark_initial_state();
  sc.t_final = sc.trajectory.t_final;
  if (doc.contains("sim")) {
    const json& s = doc["sim"];
    check_keys(s, {"dt", "t_final", "controller_rate", "seed", "initial_state"}, "sim");
    sc.dt = get_num(s, "dt", sc.dt);
    sc.t_final = get_num(s, "t_final", sc.t_final);
    const double rate = get_num(s, "controller_rate", 1.0);
    if (rate != std::floor(rate) || rate < 1.0) {
      throw ConfigError("sim: controller_rate must be a positive integer");
    }
    sc.controller_rate = static_cast<int>(rate);
    const double seed = get_num(s, "seed", 0.0);
    if (seed < 0.0 || seed != std::floor(seed)) {
      throw ConfigError("sim: seed must be a nonnegative integer");
    }
    loaded.seed = static_cast<std::uint64_t>(seed);
    if (s.contains("initial_state")) sc.initial_state = parse_initial_state(s["initial_state"]);
  }
  sc.validate();

  if (doc.contains("output")) {
    const json& o = doc["output"];
    check_keys(o, {"dir", "timeseries", "report", "manifest"}, "output");
    if (o.contains("dir")) loaded.output.dir = o["dir"].get<std::string>();
    if (o.contains("timeseries")) loaded.output.timeseries = o["timeseries"].get<std::string>();
    if (o.contains("report")) loaded.output.report = o["report"].get<std::string>();
    if (o.contains("manifest")) loaded.output.manifest = o["manifest"].get<std::string>();
  }

  loaded.resolved = json{
      {"params", params_to_json(sc.params)},
      {"controller", gains_to_json(sc.gains)},
      {"controller_label", loaded.controller_label},
      {"trajectory", trajectory_to_json(sc.trajectory)},
      {"trajectory_label", loaded.trajectory_label},
      {"sim",
       {{"dt", sc.dt},
        {"t_final", sc.t_final},
        {"controller_rate", sc.controller_rate},
        {"seed", loaded.seed},
        {"initial_state", state_to_json(sc.initial_state)}}},
      {"output",
       {{"dir", loaded.output.dir},
        {"timeseries", loaded.output.timeseries},
        {"report", loaded.output.report},
        {"manifest", loaded.output.manifest}}}};
  return loaded;
}

LoadedScenario load_scenario_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config: " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return scenario_from_json(doc);
}

LoadedTuneConfig tune_from_json(const json& doc) {
  check_keys(doc, {"ga", "scenario"}, "tune config");
  LoadedTuneConfig t;

  // Fitness horizon defaults to the full benchmark-index horizon rather
  // than the short step-study window, so tuned index values are comparable.
  t.scenario = make_preset_scenario("paper-nlpid", "step");
  t.scenario.t_final = 50.0;
  t.scenario.trajectory.t_final = 50.0;
  std::uint64_t scenario_seed = 0;
  if (doc.contains("scenario")) {
    LoadedScenario base = scenario_from_json(doc["scenario"]);
    t.scenario = base.scenario;
    scenario_seed = base.seed;
  }

  if (doc.contains("ga")) {
    const json& g = doc["ga"];
    check_keys(g,
               {"population", "generations", "crossover_prob", "mutation_prob",
                "mutation_scale", "tournament", "seed", "family", "fitness", "sphere_dim"},
               "ga");
    const double pop = get_num(g, "population", 40.0);
    const double gens = get_num(g, "generations", 50.0);
    const double tour = get_num(g, "tournament", 3.0);
    const double dim = get_num(g, "sphere_dim", 6.0);
    if (pop != std::floor(pop) || gens != std::floor(gens) || tour != std::floor(tour) ||
        dim != std::floor(dim)) {
      throw ConfigError("ga: population/generations/tournament/sphere_dim must be integers");
    }
    t.ga.population = static_cast<int>(pop);
    t.ga.generations = static_cast<int>(gens);
    t.ga.crossover_prob = get_num(g, "crossover_prob", t.ga.crossover_prob);
    t.ga.mutation_prob = get_num(g, "mutation_prob", t.ga.mutation_prob);
    t.ga.mutation_scale = get_num(g, "mutation_scale", t.ga.mutation_scale);
    t.ga.tournament = static_cast<int>(tour);
    const double seed = get_num(g, "seed", static_cast<double>(scenario_seed));
    if (seed < 0.0 || seed != std::floor(seed)) {
      throw ConfigError("ga: seed must be a nonnegative integer");
    }
    t.ga.seed = static_cast<std::uint64_t>(seed);
    if (g.contains("family")) {
      const std::string family = g["family"].get<std::string>();
      if (family == "lpid") {
        t.family = ControllerFamily::LPID;
      } else if (family == "nlpid") {
        t.family = ControllerFamily::NLPID;
      } else {
        throw ConfigError("ga: family must be 'lpid' or 'nlpid'");
      }
    }
    if (g.contains("fitness")) {
      t.fitness = g["fitness"].get<std::string>();
      if (t.fitness != "opi" && t.fitness != "sphere") {
        throw ConfigError("ga: fitness must be 'opi' or 'sphere'");
      }
    }
    t.sphere_dim = static_cast<int>(dim);
    if (t.sphere_dim < 1) throw ConfigError("ga: sphere_dim must be >= 1");
  } else {
    t.ga.seed = scenario_seed;
  }

  if (t.fitness == "sphere") {
    t.ga.bounds.lower = Eigen::VectorXd::Constant(t.sphere_dim, -5.12);
    t.ga.bounds.upper = Eigen::VectorXd::Constant(t.sphere_dim, 5.12);
  } else {
    t.ga.bounds = default_bounds(t.family);
  }
  t.ga.validate();

  t.resolved = json{
      {"ga",
       {{"population", t.ga.population},
        {"generations", t.ga.generations},
        {"crossover_prob", t.ga.crossover_prob},
        {"mutation_prob", t.ga.mutation_prob},
        {"mutation_scale", t.ga.mutation_scale},
        {"tournament", t.ga.tournament},
        {"seed", t.ga.seed},
        {"family", t.family == ControllerFamily::LPID ? "lpid" : "nlpid"},
        {"fitness", t.fitness},
        {"sphere_dim", t.sphere_dim}}},
      {"scenario",
       {{"params", params_to_json(t.scenario.params)},
        {"trajectory", trajectory_to_json(t.scenario.trajectory)},
        {"sim",
         {{"dt", t.scenario.dt},
          {"t_final", t.scenario.t_final},
          {"controller_rate", t.scenario.controller_rate},
          {"initial_state", state_to_json(t.scenario.initial_state)}}}}}};
  return t;
}

LoadedTuneConfig load_tune_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config: " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return tune_from_json(doc);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << hash;
  return os.str();
}

json make_manifest(const json& resolved_config, std::uint64_t seed,
                   const std::vector<std::string>& outputs) {
  return json{{"tool", "quadnlpid"},
              {"version", kToolVersion},
              {"format", 1},
              {"seed", seed},
              {"config_hash", fnv1a_hex(resolved_config.dump())},
              {"config", resolved_config},
              {"outputs", outputs}};
}

}  // namespace quadnlpid
