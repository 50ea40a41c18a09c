/**
 * @file control.hpp
 * @brief Cascade flight controller: per-channel linear and nonlinear PID
 *        laws, outer-loop virtual accelerations with desired-angle
 *        inversion, and the full per-tick cascade step.
 */
#pragma once

#include "quadnlpid/trajectories.hpp"
#include "quadnlpid/types.hpp"

#include <array>
#include <variant>

namespace quadnlpid {

/// Per-channel nonlinear PID parameters. Each of the three terms
/// (proportional, derivative, integral) has a sector-bounded gain
/// k_i(beta) = k_i1 + k_i2/(1 + exp(mu_i beta^2)) applied to
/// |beta|^alpha_i sign(beta).
struct NLPIDGains {
  double k11 = 0, k12 = 0;
  double k21 = 0, k22 = 0;
  double k31 = 0, k32 = 0;
  double mu1 = 0, mu2 = 0, mu3 = 0;
  double alpha1 = 1, alpha2 = 1, alpha3 = 1;
};

/// Per-channel linear PID parameters.
struct LPIDGains {
  double kp = 0, ki = 0, kd = 0;
};

using ChannelGains = std::variant<LPIDGains, NLPIDGains>;

/// Mutable per-channel controller memory, reset to zero at run start.
struct ChannelState {
  double integral_of_error = 0.0;
  double previous_error = 0.0;
  bool primed = false;  ///< first sample seen; the integral starts at the second
};

/// Desired roll/pitch produced by the outer loop, clamped to kAngleLimit.
struct AttitudeReference {
  double phi_de = 0.0;
  double theta_de = 0.0;
};

inline constexpr double kAngleLimit = 0.5;   ///< rad, clamp on phi_de/theta_de
inline constexpr double kThrustEps = 0.1;    ///< N, guard on the inversion divisor

/// Sector-bounded gain ka + kb/(1 + exp(mu beta^2)); always within
/// [ka, ka + kb/2], nonincreasing in |beta|. Exp overflow saturates to ka.
double nl_gain(double beta, double ka, double kb, double mu);

/// One nonlinear PID term: nl_gain(beta) |beta|^alpha sign(beta).
/// Odd in beta; sign(0) = 0.
double nl_term(double beta, double ka, double kb, double mu, double alpha);

/// Advances the error integral (trapezoidal, no anti-windup) and returns
/// f1(e) + f2(e_dot) + f3(integral).
double nlpid_update(ChannelState& chan, double e, double e_dot, double dt,
                    const NLPIDGains& gains);

/// Linear counterpart: kp e + kd e_dot + ki integral, same integral scheme.
double lpid_update(ChannelState& chan, double e, double e_dot, double dt,
                   const LPIDGains& gains);

/// Dispatches on the gain family.
double channel_update(ChannelState& chan, double e, double e_dot, double dt,
                      const ChannelGains& gains);

/// Inverts the small-angle lateral dynamics
///   x_ddot = -(ft/m)(phi sin(psi) + theta cos(psi))
///   y_ddot = -(ft/m)(theta sin(psi) - phi cos(psi))
/// to the desired roll/pitch realizing virtual accelerations (Ux, Uy):
/// (phi_de, theta_de) = (m/Uz) [[-sin(psi), cos(psi)], [-cos(psi), -sin(psi)]] (Ux, Uy),
/// clamped to +-kAngleLimit. Throws ThrustTooSmallError when |Uz| <= kThrustEps.
AttitudeReference outer_loop_angles(double Ux, double Uy, double Uz, double psi, double m);

/// Six-channel controller bank in fixed order x, y, z, phi, theta, psi.
struct ControllerBank {
  std::array<ChannelGains, 6> gains{};
  std::array<ChannelState, 6> channels{};

  void reset() { channels.fill(ChannelState{}); }
};

enum Channel { kChanX = 0, kChanY, kChanZ, kChanPhi, kChanTheta, kChanPsi };

/// Everything one controller tick produces, kept for logging.
struct CascadeOutput {
  ControlInputs controls;          ///< ft and body torques actually applied
  AttitudeReference attitude_ref;  ///< commanded roll/pitch
  double Ux = 0.0, Uy = 0.0;       ///< virtual lateral accelerations
  bool attitude_held = false;      ///< inversion skipped, previous command reused
};

/// One tick of the cascade: altitude loop first (its thrust feeds the
/// lateral inversion), then the x/y virtual controls and desired angles,
/// then the three attitude loops. Error derivatives use the analytic
/// reference derivative minus the measured earth-frame (resp. Euler) rate.
/// When |Uz| <= kThrustEps the inversion is skipped and `held` is reused;
/// with no held command available the error propagates.
CascadeOutput cascade_step(const RigidBodyState& state, const ReferenceSample& ref,
                           ControllerBank& bank, const QuadParams& params, double dt,
                           const AttitudeReference* held = nullptr);

}  // namespace quadnlpid
