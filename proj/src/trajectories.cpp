#include "quadnlpid/trajectories.hpp"

#include "quadnlpid/types.hpp"

#include <cmath>

namespace quadnlpid {

namespace {

double unit_step(double t) { return t >= 0.0 ? 1.0 : 0.0; }

}  // namespace

void TrajectorySpec::validate() const {
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw ConfigError("trajectory: t_final must be positive and finite");
  }
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw ConfigError("trajectory: amplitude must be nonnegative and finite");
  }
  if (!(activation_time >= 0.0) || !std::isfinite(activation_time)) {
    throw ConfigError("trajectory: activation_time must be nonnegative and finite");
  }
  for (double v : {omega, climb_rate, z_step, psi_step}) {
    if (!std::isfinite(v)) throw ConfigError("trajectory: parameters must be finite");
  }
  if (kind == TrajectoryKind::Square) {
    for (double edge : {x_on, x_off, y_on, y_off}) {
      if (edge < 0.0 || edge > t_final) {
        throw ConfigError("trajectory: square edge times must lie within [0, t_final]");
      }
    }
  }
  if (kind == TrajectoryKind::Circular || kind == TrajectoryKind::Helical) {
    if (activation_time > t_final) {
      throw ConfigError("trajectory: activation_time must lie within [0, t_final]");
    }
  }
}

ReferenceSample sample(const TrajectorySpec& spec, double t) {
  if (t < 0.0 || t > spec.t_final * (1.0 + 1e-12) + 1e-12) {
    throw ConfigError("trajectory: sample time outside [0, t_final]");
  }
  ReferenceSample s;
  switch (spec.kind) {
    case TrajectoryKind::Step:
      s.x_de = spec.amplitude * unit_step(t);
      s.y_de = spec.amplitude * unit_step(t);
      s.z_de = spec.z_step * unit_step(t);
      s.psi_de = spec.psi_step * unit_step(t);
      break;
    case TrajectoryKind::Circular:
    case TrajectoryKind::Helical:
      if (t >= spec.activation_time) {
        s.x_de = spec.amplitude * std::cos(spec.omega * t);
        s.y_de = spec.amplitude * std::sin(spec.omega * t);
        s.x_de_dot = -spec.amplitude * spec.omega * std::sin(spec.omega * t);
        s.y_de_dot = spec.amplitude * spec.omega * std::cos(spec.omega * t);
      }
      if (spec.kind == TrajectoryKind::Helical) {
        s.z_de = spec.climb_rate * t;
        s.z_de_dot = spec.climb_rate;
      } else {
        s.z_de = spec.z_step * unit_step(t);
      }
      s.psi_de = spec.psi_step * unit_step(t);
      break;
    case TrajectoryKind::Square:
      s.x_de = spec.amplitude * (unit_step(t - spec.x_on) - unit_step(t - spec.x_off));
      s.y_de = spec.amplitude * (unit_step(t - spec.y_on) - unit_step(t - spec.y_off));
      s.z_de = spec.z_step * unit_step(t);
      s.psi_de = spec.psi_step * unit_step(t);
      break;
  }
  return s;
}

std::vector<ReferenceSample> sample_series(const TrajectorySpec& spec, double dt) {
  if (!(dt > 0.0)) throw ConfigError("trajectory: dt must be positive");
  const auto n = static_cast<std::size_t>(std::floor(spec.t_final / dt + 1e-9)) + 1;
  std::vector<ReferenceSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(sample(spec, static_cast<double>(i) * dt));
  }
  return out;
}

}  // namespace quadnlpid
