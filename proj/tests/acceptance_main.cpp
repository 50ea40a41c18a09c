/**
 * @file acceptance_main.cpp
 * @brief End-to-end acceptance gate. Each criterion prints exactly one
 *        PASS/FAIL line with its measured values; the process exits nonzero
 *        if any criterion fails. Tolerances are pinned here and nowhere else.
 */
#include "quadnlpid/config.hpp"
#include "quadnlpid/control.hpp"
#include "quadnlpid/dynamics.hpp"
#include "quadnlpid/metrics.hpp"
#include "quadnlpid/presets.hpp"
#include "quadnlpid/stability.hpp"
#include "quadnlpid/tuning.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace quadnlpid;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s — %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void progress(const std::string& msg) {
  std::fprintf(stderr, "# %s\n", msg.c_str());
  std::fflush(stderr);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Criterion 1: the composite-index formula reproduces the benchmark index
// values from the benchmark per-channel integrals (0.5% relative).
// ---------------------------------------------------------------------------
void criterion_1() {
  const OpiResult nl = opi({0.438883, 1.066173, 0.152148, 0.506028},
                           {0.381936, 1.226223, 4516.303, 0.037517});
  const OpiResult lin = opi({14.285931, 7.498694, 0.059225, 1.377493},
                            {0.134411, 0.323482, 5197.496, 0.030779});
  const double err_nl = std::abs(nl.total - 0.5894) / 0.5894;
  const double err_lin = std::abs(lin.total - 3.6476) / 3.6476;
  const bool pass = err_nl <= 0.005 && err_lin <= 0.005;
  report(1, pass,
         "index identity: nonlinear " + fmt(nl.total) + " vs 0.5894 (" +
             fmt(100 * err_nl) + "%), linear " + fmt(lin.total) + " vs 3.6476 (" +
             fmt(100 * err_lin) + "%), tol 0.5%");
}

// ---------------------------------------------------------------------------
// Criteria 2 & 3 share the two 20 s benchmark step runs.
// ---------------------------------------------------------------------------
struct StepBenchmark {
  MetricsReport nlpid, lpid;
};

StepBenchmark run_step_benchmark() {
  StepBenchmark b;
  for (const char* name : {"paper-nlpid", "paper-lpid"}) {
    Scenario sc = make_preset_scenario(name, "step");
    const SimLog log = simulate(sc);
    MetricsReport rep = compute_metrics(log, sc.trajectory);
    if (std::string(name) == "paper-nlpid") {
      b.nlpid = rep;
    } else {
      b.lpid = rep;
    }
  }
  return b;
}

struct BenchmarkStep {
  const char* channel;
  double tr, ts, mp;
};

// Benchmark 20 s unit-step figures for the stock nonlinear controller.
constexpr BenchmarkStep kBenchmarkNlpid[] = {
    {"x", 1.152, 4.657, 0.505},
    {"y", 1.572, 3.023, 0.195},
    {"z", 0.677, 1.283, 0.505},
    {"psi", 0.252, 3.840, 8.152},
};

const ChannelMetrics& channel_of(const MetricsReport& rep, const std::string& name) {
  if (name == "x") return rep.x;
  if (name == "y") return rep.y;
  if (name == "z") return rep.z;
  return rep.psi;
}

void criterion_2(const StepBenchmark& bench) {
  // Timings within 25% relative; overshoot within 2 percentage points.
  bool pass = true;
  std::ostringstream detail;
  for (const BenchmarkStep& ref : kBenchmarkNlpid) {
    const ChannelMetrics& m = channel_of(bench.nlpid, ref.channel);
    const double tr = m.step.tr.value_or(-1.0);
    const double ts = m.step.ts.value_or(-1.0);
    const bool tr_ok = tr >= 0 && std::abs(tr - ref.tr) <= 0.25 * ref.tr;
    const bool ts_ok = ts >= 0 && std::abs(ts - ref.ts) <= 0.25 * ref.ts;
    const bool mp_ok = std::abs(m.step.mp - ref.mp) <= 2.0;
    pass = pass && tr_ok && ts_ok && mp_ok;
    detail << ref.channel << "(tr " << fmt(tr) << "/" << fmt(ref.tr)
           << (tr_ok ? "" : "!") << ", ts " << fmt(ts) << "/" << fmt(ref.ts)
           << (ts_ok ? "" : "!") << ", mp " << fmt(m.step.mp) << "/" << fmt(ref.mp)
           << (mp_ok ? "" : "!") << ") ";
  }
  report(2, pass, "nonlinear step metrics vs benchmark (sim/ref): " + detail.str());
}

void criterion_3(const StepBenchmark& bench) {
  std::ostringstream detail;
  bool pass = true;
  const auto check = [&](const std::string& what, bool ok) {
    pass = pass && ok;
    detail << what << (ok ? " ok" : " VIOLATED") << "; ";
  };
  for (const char* ch : {"x", "y", "psi"}) {
    const ChannelMetrics& nl = channel_of(bench.nlpid, ch);
    const ChannelMetrics& lp = channel_of(bench.lpid, ch);
    check(std::string(ch) + " faster rise",
          nl.step.tr.has_value() && lp.step.tr.has_value() && *nl.step.tr < *lp.step.tr);
    check(std::string(ch) + " faster settling",
          nl.step.ts.has_value() && lp.step.ts.has_value() && *nl.step.ts < *lp.step.ts);
  }
  for (const char* ch : {"x", "y", "z", "psi"}) {
    check(std::string(ch) + " lower overshoot",
          channel_of(bench.nlpid, ch).step.mp <= channel_of(bench.lpid, ch).step.mp);
  }
  // The linear altitude loop trades a faster rise for much more thrust energy.
  check("z rise faster for linear",
        bench.lpid.z.step.tr.has_value() && bench.nlpid.z.step.tr.has_value() &&
            *bench.lpid.z.step.tr < *bench.nlpid.z.step.tr);
  check("z control energy larger for linear", bench.lpid.z.usqr > bench.nlpid.z.usqr);
  check("composite index better for nonlinear",
        bench.nlpid.opi_result.total < bench.lpid.opi_result.total);
  report(3, pass, "qualitative orderings: " + detail.str());
}

// ---------------------------------------------------------------------------
// Criterion 4: circular-path steady-state tracking error.
// ---------------------------------------------------------------------------
void criterion_4() {
  double e[2][2];  // [controller][axis]
  int idx = 0;
  for (const char* name : {"paper-nlpid", "paper-lpid"}) {
    Scenario sc = make_preset_scenario(name, "case1-circle");
    const SimLog log = simulate(sc);
    const MetricsReport rep = compute_metrics(log, sc.trajectory);
    e[idx][0] = rep.x.ss_error_pct;
    e[idx][1] = rep.y.ss_error_pct;
    ++idx;
  }
  const bool nl_ok = e[0][0] <= 2.0 && e[0][1] <= 6.0;
  const bool ratio_ok = e[1][0] >= 5.0 * e[0][0] && e[1][1] >= 5.0 * e[0][1];
  report(4, nl_ok && ratio_ok,
         "circular tracking error %: nonlinear x " + fmt(e[0][0]) + " (<=2), y " +
             fmt(e[0][1]) + " (<=6); linear x " + fmt(e[1][0]) + ", y " + fmt(e[1][1]) +
             " (>=5x nonlinear)");
}

// ---------------------------------------------------------------------------
// Criterion 5: square-path transition overshoot.
// ---------------------------------------------------------------------------
struct Edge {
  double t_edge, t_end, old_level, new_level;
};

double max_transition_overshoot_pct(const SimLog& log, bool channel_x,
                                    const std::vector<Edge>& edges) {
  double worst = 0.0;
  for (const Edge& e : edges) {
    const double dir = e.new_level > e.old_level ? 1.0 : -1.0;
    const double span = std::abs(e.new_level - e.old_level);
    for (const auto& row : log.rows) {
      if (row.t < e.t_edge || row.t >= e.t_end) continue;
      const double y = channel_x ? row.state.x : row.state.y;
      worst = std::max(worst, 100.0 * dir * (y - e.new_level) / span);
    }
  }
  return worst;
}

void criterion_5() {
  double overshoot[2];
  int idx = 0;
  for (const char* name : {"paper-nlpid", "paper-lpid"}) {
    Scenario sc = make_preset_scenario(name, "case3-square");
    const SimLog log = simulate(sc);
    const double ox = max_transition_overshoot_pct(
        log, true, {{10.0, 50.0, 0.0, 1.0}, {50.0, 100.0, 1.0, 0.0}});
    const double oy = max_transition_overshoot_pct(
        log, false, {{30.0, 70.0, 0.0, 1.0}, {70.0, 100.0, 1.0, 0.0}});
    overshoot[idx++] = std::max(ox, oy);
  }
  const bool pass = overshoot[0] < 25.0 && overshoot[1] > 100.0;
  report(5, pass,
         "square-path worst transition overshoot %: nonlinear " + fmt(overshoot[0]) +
             " (<25), linear " + fmt(overshoot[1]) + " (>100)");
}

// ---------------------------------------------------------------------------
// Criterion 6: sector-box certification, cross-checked against companion
// eigenvalues at every corner.
// ---------------------------------------------------------------------------
double max_root_real(double k1, double k2, double k3, double h) {
  const auto coeffs = char_poly(k1, k2, k3, h);
  Eigen::Matrix3d companion;
  companion << 0, 0, -coeffs[3],
               1, 0, -coeffs[2],
               0, 1, -coeffs[1];
  return Eigen::EigenSolver<Eigen::Matrix3d>(companion, false)
      .eigenvalues()
      .real()
      .maxCoeff();
}

void criterion_6() {
  const QuadParams params;
  const auto reports = verify_bank(controller_preset("paper-nlpid"), params);
  bool all_stable = true, inequality = true, eigen_ok = true;
  double worst_real = -1e300;
  for (const auto& rep : reports) {
    all_stable = all_stable && rep.stable;
    inequality = inequality && rep.inequality_holds;
    for (const auto& corner : rep.corner_results) {
      const double real = max_root_real(corner.k1, corner.k2, corner.k3, rep.h);
      worst_real = std::max(worst_real, real);
      eigen_ok = eigen_ok && corner.stable && real < 1e-9;
    }
  }
  report(6, all_stable && inequality && eigen_ok,
         "nonlinear gain set certified on all 6 channels (8 corners each); "
         "inequality holds; worst eigenvalue real part " + fmt(worst_real) +
             " (< 1e-9)");
}

// ---------------------------------------------------------------------------
// Criterion 7: core invariants re-checked end to end.
// ---------------------------------------------------------------------------
std::optional<std::string> prop_gain_sector() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> beta(-100.0, 100.0);
  std::uniform_real_distribution<double> coeff(0.0, 50.0);
  for (int i = 0; i < 1000000; ++i) {
    const double ka = coeff(rng), kb = coeff(rng), mu = coeff(rng);
    const double g = nl_gain(beta(rng), ka, kb, mu);
    if (g < ka || g > ka + kb / 2.0) return "gain left its sector";
  }
  return std::nullopt;
}

std::optional<std::string> prop_linear_degeneracy() {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> err(-5.0, 5.0);
  std::uniform_real_distribution<double> coeff(0.0, 30.0);
  for (int trial = 0; trial < 100; ++trial) {
    NLPIDGains nl;
    nl.k11 = coeff(rng);
    nl.k21 = coeff(rng);
    nl.k31 = coeff(rng);
    const LPIDGains lin{nl.k11, nl.k31, nl.k21};
    ChannelState a, b;
    for (int step = 0; step < 50; ++step) {
      const double e = err(rng), e_dot = err(rng);
      const double ua = nlpid_update(a, e, e_dot, 1e-3, nl);
      const double ub = lpid_update(b, e, e_dot, 1e-3, lin);
      if (std::abs(ua - ub) > 1e-12 * (1.0 + std::abs(ub))) {
        return "unit-exponent law differs from the linear law";
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> prop_rotation_orthonormal() {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> angle(-1.5, 1.5);
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Matrix3d R = rotation_matrix(angle(rng), angle(rng), angle(rng));
    if (((R * R.transpose()) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-10 ||
        std::abs(R.determinant() - 1.0) > 1e-10) {
      return "rotation matrix not orthonormal";
    }
  }
  return std::nullopt;
}

std::optional<std::string> prop_mixer_round_trip() {
  const QuadParams params;
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> speed(50.0, 600.0);
  for (int i = 0; i < 1000; ++i) {
    RotorSpeeds rotors{speed(rng), speed(rng), speed(rng), speed(rng)};
    const ControlInputs wrench = mix(rotors, params);
    const RotorSpeeds back = unmix(wrench, params);
    const ControlInputs again = mix(back, params);
    const double scale = std::abs(wrench.ft) + 1.0;
    if (std::abs(again.ft - wrench.ft) > 1e-9 * scale ||
        std::abs(again.tau_x - wrench.tau_x) > 1e-9 ||
        std::abs(again.tau_y - wrench.tau_y) > 1e-9 ||
        std::abs(again.tau_z - wrench.tau_z) > 1e-9) {
      return "mixer round trip drifted";
    }
  }
  return std::nullopt;
}

std::optional<std::string> prop_ballistic_closed_forms() {
  const QuadParams params;
  RigidBodyState state;
  for (int i = 0; i < 1000; ++i) {
    state = rk4_step(state, ControlInputs{}, WindDisturbance{}, params, 1e-3);
  }
  if (std::abs(state.w + 9.81) > 1e-9 || std::abs(state.z + 9.81 / 2.0) > 1e-9) {
    return "free fall diverged from the closed form";
  }
  state = RigidBodyState{};
  ControlInputs inputs;
  inputs.ft = params.m * params.g;
  inputs.tau_z = 0.01;
  for (int i = 0; i < 1000; ++i) {
    state = rk4_step(state, inputs, WindDisturbance{}, params, 1e-3);
  }
  if (std::abs(state.r - 0.01 / params.Iz) > 1e-9) {
    return "constant-torque spin diverged from the closed form";
  }
  return std::nullopt;
}

std::optional<std::string> prop_quadrature() {
  const std::vector<double> e(2001, 1.0);
  if (std::abs(itae(e, 1e-3) - 2.0) > 1e-9) return "time-weighted integral off";
  const std::vector<double> u(3001, 2.0);
  if (std::abs(usqr(u, 1e-3) - 12.0) > 1e-9) return "energy integral off";
  return std::nullopt;
}

std::optional<std::string> prop_step_halving() {
  Scenario coarse = make_preset_scenario("paper-nlpid", "step");
  Scenario fine = coarse;
  fine.dt = 5e-4;
  const SimLog a = simulate(coarse);
  const SimLog b = simulate(fine);
  if (a.diverged || b.diverged) return "benchmark step run diverged";
  const double diff =
      (a.rows.back().state.to_vector() - b.rows.back().state.to_vector())
          .cwiseAbs()
          .maxCoeff();
  if (diff >= 1e-6) return "halving the step moved the final state by " + fmt(diff);
  return std::nullopt;
}

std::optional<std::string> prop_ga_contract() {
  GaConfig cfg;
  cfg.population = 20;
  cfg.generations = 10;
  cfg.seed = 5;
  cfg.bounds.lower = Eigen::VectorXd::Constant(4, -5.12);
  cfg.bounds.upper = Eigen::VectorXd::Constant(4, 5.12);
  const auto sphere = [](const Eigen::VectorXd& v) { return v.squaredNorm(); };
  const GaResult a = ga_optimize(cfg, sphere);
  const GaResult b = ga_optimize(cfg, sphere);
  if (a.best != b.best || a.history != b.history) return "search is not deterministic";
  for (std::size_t i = 1; i < a.history.size(); ++i) {
    if (a.history[i] > a.history[i - 1]) return "best-so-far history not monotone";
  }
  if (a.best_fitness > a.history.front()) return "result worse than initial population";
  return std::nullopt;
}

void criterion_7() {
  struct Prop {
    const char* name;
    std::optional<std::string> (*check)();
  };
  const Prop props[] = {
      {"gain sector", prop_gain_sector},
      {"linear degeneracy", prop_linear_degeneracy},
      {"rotation orthonormality", prop_rotation_orthonormal},
      {"mixer round trip", prop_mixer_round_trip},
      {"ballistic closed forms", prop_ballistic_closed_forms},
      {"quadrature", prop_quadrature},
      {"step halving", prop_step_halving},
      {"search determinism", prop_ga_contract},
  };
  bool pass = true;
  std::ostringstream detail;
  for (const Prop& p : props) {
    progress(std::string("criterion 7: ") + p.name);
    const auto failure = p.check();
    if (failure) {
      pass = false;
      detail << p.name << ": " << *failure << "; ";
    }
  }
  report(7, pass,
         pass ? "all 8 invariant groups hold (sector, degeneracy, rotation, mixer, "
                "ballistics, quadrature, step halving, search)"
              : detail.str());
}

// ---------------------------------------------------------------------------
// Criterion 8: the shipped search recovers a competitive nonlinear gain set.
// ---------------------------------------------------------------------------
void criterion_8() {
  Scenario sc = make_preset_scenario("paper-nlpid", "step");
  sc.t_final = 50.0;
  sc.trajectory.t_final = 50.0;

  GaConfig cfg;
  cfg.bounds = default_bounds(ControllerFamily::NLPID);
  const FitnessFn fitness = [&sc](const Eigen::VectorXd& v) {
    return gain_fitness(v, ControllerFamily::NLPID, sc);
  };

  double best = 1e300;
  std::vector<double> per_seed;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    progress("criterion 8: search with seed " + std::to_string(seed) +
             " (40 individuals x 50 generations)");
    cfg.seed = seed;
    const GaResult r = ga_optimize(cfg, fitness);
    per_seed.push_back(r.best_fitness);
    best = std::min(best, r.best_fitness);
  }
  // 1.5x the benchmark index of the stock nonlinear gain set.
  const double threshold = 0.8841;
  std::ostringstream detail;
  detail << "best tuned index " << fmt(best) << " (threshold " << fmt(threshold)
         << "); per seed:";
  for (double v : per_seed) detail << " " << fmt(v);
  report(8, best <= threshold, detail.str());
}

}  // namespace

int main() {
  std::printf("acceptance: quadrotor cascade-controller toolkit\n");
  criterion_1();

  progress("running 20 s benchmark step pair");
  const StepBenchmark bench = run_step_benchmark();
  criterion_2(bench);
  criterion_3(bench);

  progress("running 50 s circular-path pair");
  criterion_4();
  progress("running 100 s square-path pair");
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();

  std::printf("acceptance: %d/8 criteria passed\n", 8 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
