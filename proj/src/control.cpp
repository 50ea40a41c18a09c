#include "quadnlpid/control.hpp"

#include "quadnlpid/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace quadnlpid {

double nl_gain(double beta, double ka, double kb, double mu) {
  const double ex = mu * beta * beta;
  // exp overflow would give inf; the gain then degenerates to ka, which is
  // also the analytic limit.
  if (ex > 700.0) return ka;
  return ka + kb / (1.0 + std::exp(ex));
}

double nl_term(double beta, double ka, double kb, double mu, double alpha) {
  if (beta == 0.0) return 0.0;
  return nl_gain(beta, ka, kb, mu) * std::pow(std::abs(beta), alpha) * sign(beta);
}

namespace {

void advance_integral(ChannelState& chan, double e, double dt) {
  // Trapezoid over the sampled errors; the first sample opens the first
  // interval, so it contributes nothing yet.
  if (chan.primed) {
    chan.integral_of_error += 0.5 * dt * (e + chan.previous_error);
  } else {
    chan.primed = true;
  }
  chan.previous_error = e;
}

}  // namespace

double nlpid_update(ChannelState& chan, double e, double e_dot, double dt,
                    const NLPIDGains& g) {
  advance_integral(chan, e, dt);
  return nl_term(e, g.k11, g.k12, g.mu1, g.alpha1) +
         nl_term(e_dot, g.k21, g.k22, g.mu2, g.alpha2) +
         nl_term(chan.integral_of_error, g.k31, g.k32, g.mu3, g.alpha3);
}

double lpid_update(ChannelState& chan, double e, double e_dot, double dt,
                   const LPIDGains& g) {
  advance_integral(chan, e, dt);
  return g.kp * e + g.kd * e_dot + g.ki * chan.integral_of_error;
}

double channel_update(ChannelState& chan, double e, double e_dot, double dt,
                      const ChannelGains& gains) {
  return std::visit(
      [&](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, LPIDGains>) {
          return lpid_update(chan, e, e_dot, dt, g);
        } else {
          return nlpid_update(chan, e, e_dot, dt, g);
        }
      },
      gains);
}

AttitudeReference outer_loop_angles(double Ux, double Uy, double Uz, double psi, double m) {
  if (std::abs(Uz) <= kThrustEps) {
    throw ThrustTooSmallError(Uz);
  }
  const double cps = std::cos(psi), sps = std::sin(psi);
  const double scale = m / Uz;
  AttitudeReference ref;
  ref.phi_de = scale * (-sps * Ux + cps * Uy);
  ref.theta_de = scale * (-cps * Ux - sps * Uy);
  ref.phi_de = std::clamp(ref.phi_de, -kAngleLimit, kAngleLimit);
  ref.theta_de = std::clamp(ref.theta_de, -kAngleLimit, kAngleLimit);
  return ref;
}

CascadeOutput cascade_step(const RigidBodyState& s, const ReferenceSample& ref,
                           ControllerBank& bank, const QuadParams& params, double dt,
                           const AttitudeReference* held) {
  const Matrix3d R = rotation_matrix(s.phi, s.theta, s.psi);
  const Matrix3d E = euler_rate_matrix(s.phi, s.theta);
  // Measured earth-frame velocity under the altitude-up convention and the
  // measured Euler rates; both are exact functions of the plant state, so
  // error derivatives need no numeric differencing.
  const double x_dot = R(0, 0) * s.u + R(0, 1) * s.v - R(0, 2) * s.w;
  const double y_dot = R(1, 0) * s.u + R(1, 1) * s.v - R(1, 2) * s.w;
  const double z_dot = std::sin(s.theta) * s.u - std::cos(s.theta) * std::sin(s.phi) * s.v +
                       std::cos(s.phi) * std::cos(s.theta) * s.w;
  const Vector3d euler_dot = E * Vector3d(s.p, s.q, s.r);

  CascadeOutput out;

  // Altitude loop first: its thrust is the divisor of the lateral inversion.
  out.controls.ft = channel_update(bank.channels[kChanZ], ref.z_de - s.z,
                                   ref.z_de_dot - z_dot, dt, bank.gains[kChanZ]);

  out.Ux = channel_update(bank.channels[kChanX], ref.x_de - s.x, ref.x_de_dot - x_dot, dt,
                          bank.gains[kChanX]);
  out.Uy = channel_update(bank.channels[kChanY], ref.y_de - s.y, ref.y_de_dot - y_dot, dt,
                          bank.gains[kChanY]);

  try {
    out.attitude_ref = outer_loop_angles(out.Ux, out.Uy, out.controls.ft, s.psi, params.m);
  } catch (const ThrustTooSmallError&) {
    if (held == nullptr) throw;
    out.attitude_ref = *held;
    out.attitude_held = true;
  }

  // Attitude references carry no analytic derivative; their rate is taken
  // as zero in the error derivative.
  out.controls.tau_x =
      channel_update(bank.channels[kChanPhi], out.attitude_ref.phi_de - s.phi,
                     -euler_dot[0], dt, bank.gains[kChanPhi]);
  out.controls.tau_y =
      channel_update(bank.channels[kChanTheta], out.attitude_ref.theta_de - s.theta,
                     -euler_dot[1], dt, bank.gains[kChanTheta]);
  out.controls.tau_z =
      channel_update(bank.channels[kChanPsi], ref.psi_de - s.psi,
                     ref.psi_de_dot - euler_dot[2], dt, bank.gains[kChanPsi]);

  return out;
}

}  // namespace quadnlpid
