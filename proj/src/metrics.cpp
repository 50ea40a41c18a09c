#include "quadnlpid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace quadnlpid {

void OpiWeights::validate() const {
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::abs(w1[i] + w2[i] - 1.0) > 1e-12) {
      throw ConfigError("opi weights: w1 + w2 must equal 1 per channel");
    }
    if (!(n1[i] > 0.0) || !(n2[i] > 0.0)) {
      throw ConfigError("opi weights: normalizers must be positive");
    }
    if (w_hat[i] < 0.0) throw ConfigError("opi weights: channel weights must be >= 0");
  }
}

namespace {

double trapezoid(const std::vector<double>& f, double dt) {
  if (f.empty()) throw ConfigError("metrics: empty series");
  if (f.size() == 1) return 0.0;
  double acc = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += f[i];
  return acc * dt;
}

}  // namespace

double itae(const std::vector<double>& error, double dt) {
  std::vector<double> f(error.size());
  for (std::size_t i = 0; i < error.size(); ++i) {
    f[i] = static_cast<double>(i) * dt * std::abs(error[i]);
  }
  return trapezoid(f, dt);
}

double usqr(const std::vector<double>& control, double dt) {
  std::vector<double> f(control.size());
  for (std::size_t i = 0; i < control.size(); ++i) f[i] = control[i] * control[i];
  return trapezoid(f, dt);
}

namespace {

/// First time the series crosses `level` from below, linearly interpolated;
/// 0 when it starts at or above the level; empty when it never reaches it.
std::optional<double> first_crossing(const std::vector<double>& y, double level, double dt) {
  if (y.empty()) return std::nullopt;
  if (y[0] >= level) return 0.0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i] >= level) {
      const double frac = (level - y[i - 1]) / (y[i] - y[i - 1]);
      return (static_cast<double>(i - 1) + frac) * dt;
    }
  }
  return std::nullopt;
}

}  // namespace

StepMetrics step_metrics(const std::vector<double>& output, double reference, double dt) {
  StepMetrics m;
  if (output.empty() || reference == 0.0) return m;

  const double dir = reference > 0.0 ? 1.0 : -1.0;
  std::vector<double> y(output.size());
  for (std::size_t i = 0; i < output.size(); ++i) y[i] = dir * output[i];
  const double ref = dir * reference;

  const auto t10 = first_crossing(y, 0.1 * ref, dt);
  const auto t90 = first_crossing(y, 0.9 * ref, dt);
  if (t10 && t90) m.tr = *t90 - *t10;

  // Settling: the instant of the last entry into the +-2% band.
  const double band = 0.02 * std::abs(ref);
  std::size_t last_outside = 0;
  bool ever_outside = false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (std::abs(y[i] - ref) > band) {
      last_outside = i;
      ever_outside = true;
    }
  }
  if (!ever_outside) {
    m.ts = 0.0;
  } else if (last_outside + 1 < y.size()) {
    const double y0 = y[last_outside], y1 = y[last_outside + 1];
    const double target = y0 < ref ? ref - band : ref + band;
    double frac = 1.0;
    if (y1 != y0) frac = std::clamp((target - y0) / (y1 - y0), 0.0, 1.0);
    m.ts = (static_cast<double>(last_outside) + frac) * dt;
  }
  // never settles: ts stays empty

  const double peak = *std::max_element(y.begin(), y.end());
  m.mp = std::max(0.0, 100.0 * (peak - ref) / std::abs(ref));
  return m;
}

std::pair<double, double> peak_extrema(const std::vector<double>& series) {
  if (series.empty()) throw ConfigError("metrics: empty series");
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  return {*lo, *hi};
}

double steady_state_error_pct(const std::vector<double>& output,
                              const std::vector<double>& reference,
                              double window_fraction, double amplitude) {
  if (output.empty() || output.size() != reference.size()) {
    throw ConfigError("metrics: output/reference size mismatch");
  }
  if (!(window_fraction > 0.0) || window_fraction > 1.0) {
    throw ConfigError("metrics: window_fraction must be in (0, 1]");
  }
  if (!(amplitude > 0.0)) throw ConfigError("metrics: amplitude must be positive");
  const auto n = output.size();
  const auto start = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * (1.0 - window_fraction)));
  double acc = 0.0;
  for (std::size_t i = start; i < n; ++i) acc += std::abs(reference[i] - output[i]);
  return 100.0 * acc / (static_cast<double>(n - start) * amplitude);
}

OpiResult opi(const std::array<double, 4>& itae_vals, const std::array<double, 4>& usqr_vals,
              const OpiWeights& w) {
  w.validate();
  OpiResult r;
  for (std::size_t i = 0; i < 4; ++i) {
    r.per_channel[i] = w.w1[i] * itae_vals[i] / w.n1[i] + w.w2[i] * usqr_vals[i] / w.n2[i];
    r.total += w.w_hat[i] * r.per_channel[i];
  }
  return r;
}

namespace {

struct Series {
  std::vector<double> out, ref, ctrl;
};

double ref_amplitude(const std::vector<double>& ref) {
  double amp = 0.0;
  for (double v : ref) amp = std::max(amp, std::abs(v));
  return amp > 0.0 ? amp : 1.0;
}

ChannelMetrics channel_metrics(const Series& s, double dt, bool step_scenario,
                               double step_level, double ss_window) {
  ChannelMetrics m;
  std::vector<double> err(s.out.size());
  for (std::size_t i = 0; i < s.out.size(); ++i) err[i] = s.ref[i] - s.out[i];
  m.itae = itae(err, dt);
  m.usqr = usqr(s.ctrl, dt);
  if (step_scenario && step_level != 0.0) {
    m.step = step_metrics(s.out, step_level, dt);
  }
  m.ss_error_pct = steady_state_error_pct(s.out, s.ref, ss_window, ref_amplitude(s.ref));
  std::tie(m.min_peak, m.max_peak) = peak_extrema(s.out);
  return m;
}

}  // namespace

MetricsReport compute_metrics(const SimLog& log, const TrajectorySpec& trajectory,
                              const OpiWeights& weights, double ss_window) {
  if (log.rows.empty()) throw ConfigError("metrics: empty log");
  const std::size_t n = log.rows.size();
  const bool is_step = trajectory.kind == TrajectoryKind::Step;

  Series sx, sy, sz, spsi, sphi, stheta;
  for (auto* s : {&sx, &sy, &sz, &spsi, &sphi, &stheta}) {
    s->out.reserve(n);
    s->ref.reserve(n);
    s->ctrl.reserve(n);
  }
  for (const auto& r : log.rows) {
    sx.out.push_back(r.state.x);
    sx.ref.push_back(r.ref.x_de);
    sx.ctrl.push_back(r.Ux);
    sy.out.push_back(r.state.y);
    sy.ref.push_back(r.ref.y_de);
    sy.ctrl.push_back(r.Uy);
    sz.out.push_back(r.state.z);
    sz.ref.push_back(r.ref.z_de);
    sz.ctrl.push_back(r.Uz);
    spsi.out.push_back(r.state.psi);
    spsi.ref.push_back(r.ref.psi_de);
    spsi.ctrl.push_back(r.Upsi);
    // Roll/pitch track the commanded attitude produced by the outer loop.
    sphi.out.push_back(r.state.phi);
    sphi.ref.push_back(r.phi_de);
    sphi.ctrl.push_back(r.Uphi);
    stheta.out.push_back(r.state.theta);
    stheta.ref.push_back(r.theta_de);
    stheta.ctrl.push_back(r.Utheta);
  }

  MetricsReport rep;
  rep.diverged = log.diverged;
  rep.divergence_time = log.divergence_time;
  rep.x = channel_metrics(sx, log.dt, is_step, trajectory.amplitude, ss_window);
  rep.y = channel_metrics(sy, log.dt, is_step, trajectory.amplitude, ss_window);
  rep.z = channel_metrics(sz, log.dt, is_step, trajectory.z_step, ss_window);
  rep.psi = channel_metrics(spsi, log.dt, is_step, trajectory.psi_step, ss_window);
  rep.phi = channel_metrics(sphi, log.dt, false, 0.0, ss_window);
  rep.theta = channel_metrics(stheta, log.dt, false, 0.0, ss_window);
  rep.opi_result = opi({rep.x.itae, rep.y.itae, rep.z.itae, rep.psi.itae},
                       {rep.x.usqr, rep.y.usqr, rep.z.usqr, rep.psi.usqr}, weights);
  return rep;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string("n/a");
}

}  // namespace

void write_report(const MetricsReport& rep, std::ostream& os) {
  os << "diverged: " << (rep.diverged ? "true" : "false") << "\n";
  if (rep.diverged) os << "divergence_time: " << fmt(rep.divergence_time) << "\n";
  os << "\n[step-response]\nchannel tr_s ts_s mp_pct\n";
  const auto step_row = [&](const char* name, const ChannelMetrics& m) {
    os << name << " " << fmt_opt(m.step.tr) << " " << fmt_opt(m.step.ts) << " "
       << fmt(m.step.mp) << "\n";
  };
  step_row("x", rep.x);
  step_row("y", rep.y);
  step_row("z", rep.z);
  step_row("psi", rep.psi);

  os << "\n[peaks]\nchannel min_peak max_peak\n";
  const auto peak_row = [&](const char* name, const ChannelMetrics& m) {
    os << name << " " << fmt(m.min_peak) << " " << fmt(m.max_peak) << "\n";
  };
  peak_row("phi", rep.phi);
  peak_row("theta", rep.theta);

  os << "\n[tracking]\nchannel itae usqr ss_error_pct\n";
  const auto track_row = [&](const char* name, const ChannelMetrics& m) {
    os << name << " " << fmt(m.itae) << " " << fmt(m.usqr) << " " << fmt(m.ss_error_pct)
       << "\n";
  };
  track_row("x", rep.x);
  track_row("y", rep.y);
  track_row("z", rep.z);
  track_row("psi", rep.psi);

  os << "\n[opi]\nchannel opi\n";
  const char* names[4] = {"x", "y", "z", "psi"};
  for (std::size_t i = 0; i < 4; ++i) {
    os << names[i] << " " << fmt(rep.opi_result.per_channel[i]) << "\n";
  }
  os << "total " << fmt(rep.opi_result.total) << "\n";
}

void write_report(const MetricsReport& rep, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  write_report(rep, f);
}

void write_compare_report(const MetricsReport& a, const MetricsReport& b,
                          const std::string& label_a, const std::string& label_b,
                          std::ostream& os) {
  os << "columns: " << label_a << " " << label_b << "\n";
  os << "diverged: " << (a.diverged ? "true" : "false") << " "
     << (b.diverged ? "true" : "false") << "\n";

  const auto pick = [](const MetricsReport& r, const char* name) -> const ChannelMetrics& {
    if (std::string(name) == "x") return r.x;
    if (std::string(name) == "y") return r.y;
    if (std::string(name) == "z") return r.z;
    if (std::string(name) == "psi") return r.psi;
    if (std::string(name) == "phi") return r.phi;
    return r.theta;
  };

  os << "\n[step-response]\nchannel tr_a tr_b ts_a ts_b mp_a mp_b\n";
  for (const char* name : {"x", "y", "z", "psi"}) {
    const auto& ma = pick(a, name);
    const auto& mb = pick(b, name);
    os << name << " " << fmt_opt(ma.step.tr) << " " << fmt_opt(mb.step.tr) << " "
       << fmt_opt(ma.step.ts) << " " << fmt_opt(mb.step.ts) << " " << fmt(ma.step.mp)
       << " " << fmt(mb.step.mp) << "\n";
  }

  os << "\n[peaks]\nchannel min_a min_b max_a max_b\n";
  for (const char* name : {"phi", "theta"}) {
    const auto& ma = pick(a, name);
    const auto& mb = pick(b, name);
    os << name << " " << fmt(ma.min_peak) << " " << fmt(mb.min_peak) << " "
       << fmt(ma.max_peak) << " " << fmt(mb.max_peak) << "\n";
  }

  os << "\n[tracking]\nchannel itae_a itae_b usqr_a usqr_b ss_a_pct ss_b_pct\n";
  for (const char* name : {"x", "y", "z", "psi"}) {
    const auto& ma = pick(a, name);
    const auto& mb = pick(b, name);
    os << name << " " << fmt(ma.itae) << " " << fmt(mb.itae) << " " << fmt(ma.usqr) << " "
       << fmt(mb.usqr) << " " << fmt(ma.ss_error_pct) << " " << fmt(mb.ss_error_pct)
       << "\n";
  }

  os << "\n[opi]\nchannel opi_a opi_b\n";
  const char* names[4] = {"x", "y", "z", "psi"};
  for (std::size_t i = 0; i < 4; ++i) {
    os << names[i] << " " << fmt(a.opi_result.per_channel[i]) << " "
       << fmt(b.opi_result.per_channel[i]) << "\n";
  }
  os << "total " << fmt(a.opi_result.total) << " " << fmt(b.opi_result.total) << "\n";
}

}  // namespace quadnlpid
