#include "quadnlpid/simengine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace quadnlpid {

void Scenario::validate() const {
  params.validate();
  trajectory.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("scenario: dt must be positive");
  if (!(t_final >= dt)) throw ConfigError("scenario: t_final must be at least dt");
  if (t_final > trajectory.t_final * (1.0 + 1e-12)) {
    throw ConfigError("scenario: t_final exceeds the reference horizon");
  }
  if (controller_rate < 1) throw ConfigError("scenario: controller_rate must be >= 1");
  if (!initial_state.finite()) throw ConfigError("scenario: initial state must be finite");
}

std::size_t grid_size(double t_final, double dt) {
  return static_cast<std::size_t>(std::floor(t_final / dt + 1e-9)) + 1;
}

RigidBodyState rk4_step(const RigidBodyState& state, const ControlInputs& inputs,
                        const WindDisturbance& wind, const QuadParams& params, double dt,
                        AltitudeConvention convention) {
  const auto f = [&](const Vector12d& s) {
    return state_derivative(RigidBodyState::from_vector(s), inputs, params, wind, convention);
  };
  const Vector12d s0 = state.to_vector();
  const Vector12d k1 = f(s0);
  const Vector12d k2 = f(s0 + 0.5 * dt * k1);
  const Vector12d k3 = f(s0 + 0.5 * dt * k2);
  const Vector12d k4 = f(s0 + dt * k3);
  return RigidBodyState::from_vector(s0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

namespace {

bool exceeds_threshold(const RigidBodyState& s) {
  const Vector12d v = s.to_vector();
  return !v.allFinite() || v.cwiseAbs().maxCoeff() > kDivergenceThreshold;
}

}  // namespace

SimLog simulate(const Scenario& sc) {
  sc.validate();
  const std::size_t n = grid_size(sc.t_final, sc.dt);
  SimLog log;
  log.dt = sc.dt;
  log.rows.reserve(n);

  RigidBodyState state = sc.initial_state;
  ControllerBank bank;
  bank.gains = sc.gains;
  AttitudeReference held{0.0, 0.0};
  CascadeOutput out;
  const double dt_ctrl = sc.dt * static_cast<double>(sc.controller_rate);

  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * sc.dt;
    const ReferenceSample ref = sample(sc.trajectory, std::min(t, sc.trajectory.t_final));

    if (i % static_cast<std::size_t>(sc.controller_rate) == 0) {
      try {
        out = cascade_step(state, ref, bank, sc.params, dt_ctrl, &held);
        held = out.attitude_ref;
      } catch (const GimbalSingularityError&) {
        log.diverged = true;
        log.divergence_time = t;
        break;
      }
    }

    SimLogRow row;
    row.t = t;
    row.state = state;
    row.ref = ref;
    row.Ux = out.Ux;
    row.Uy = out.Uy;
    row.Uz = out.controls.ft;
    row.Uphi = out.controls.tau_x;
    row.Utheta = out.controls.tau_y;
    row.Upsi = out.controls.tau_z;
    row.phi_de = out.attitude_ref.phi_de;
    row.theta_de = out.attitude_ref.theta_de;
    log.rows.push_back(row);

    if (exceeds_threshold(state)) {
      log.diverged = true;
      log.divergence_time = t;
      break;
    }
    if (i + 1 == n) break;

    try {
      state = rk4_step(state, out.controls, sc.wind, sc.params, sc.dt);
    } catch (const GimbalSingularityError&) {
      log.diverged = true;
      log.divergence_time = t;
      break;
    }
  }
  return log;
}

void write_csv(const SimLog& log, std::ostream& os) {
  os << "t,x,y,z,phi,theta,psi,u,v,w,p,q,r,"
        "x_de,y_de,z_de,psi_de,Ux,Uy,Uz,Uphi,Utheta,Upsi,phi_de,theta_de\n";
  char buf[32];
  const auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.9g", v);
    os << buf << sep;
  };
  for (const auto& r : log.rows) {
    const auto& s = r.state;
    const double cols[] = {r.t,    s.x,    s.y,      s.z,      s.phi,     s.theta,
                           s.psi,  s.u,    s.v,      s.w,      s.p,       s.q,
                           s.r,    r.ref.x_de, r.ref.y_de, r.ref.z_de, r.ref.psi_de,
                           r.Ux,   r.Uy,   r.Uz,     r.Uphi,   r.Utheta,  r.Upsi,
                           r.phi_de, r.theta_de};
    constexpr std::size_t count = sizeof(cols) / sizeof(cols[0]);
    for (std::size_t i = 0; i < count; ++i) {
      put(cols[i], i + 1 == count ? '\n' : ',');
    }
  }
}

void write_csv(const SimLog& log, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  write_csv(log, f);
}

}  // namespace quadnlpid
