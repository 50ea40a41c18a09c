/**
 * @file stability.hpp
 * @brief Hurwitz certification of the per-channel closed loops: cubic
 *        characteristic polynomial, leading principal minors, and a
 *        sector-box corner check over the nonlinear gain ranges.
 */
#pragma once

#include "quadnlpid/control.hpp"

#include <array>
#include <string>
#include <vector>

namespace quadnlpid {

/// One double-integrator channel: name plus input effectiveness h
/// (1/Ix, 1/Iy, 1/Iz for roll/pitch/yaw, 1 for x/y, 1/m for altitude).
struct SubsystemSpec {
  std::string name;
  double h = 1.0;
};

/// Minors evaluated at one corner of the gain-sector box.
struct CornerResult {
  double k1 = 0, k2 = 0, k3 = 0;       ///< gain values at this corner
  double delta1 = 0, delta2 = 0, delta3 = 0;
  bool stable = false;                 ///< all three minors > 0
};

/// Verdict for one subsystem.
struct HurwitzReport {
  std::string name;
  double h = 0;
  bool stable = false;           ///< every corner passed
  std::vector<CornerResult> corner_results;
  /// The printed small-gain inequality k21 > k31 / (h (k11 + k12/2)),
  /// evaluated as stated.
  double k21 = 0;
  double k21_required = 0;
  bool inequality_holds = false;
  /// Distance of the actual exponents from the alpha = 1 approximation the
  /// certificate assumes.
  double max_alpha_deviation = 0;
};

/// Coefficients (1, h k2, h k1, h k3) of
/// lambda^3 + h k2 lambda^2 + h k1 lambda + h k3.
std::array<double, 4> char_poly(double k1, double k2, double k3, double h);

/// Leading principal minors of the Hurwitz matrix of a monic cubic
/// lambda^3 + a2 lambda^2 + a1 lambda + a0:
/// delta1 = a2, delta2 = a2 a1 - a0, delta3 = a0 delta2.
std::array<double, 3> hurwitz_minors(const std::array<double, 4>& coeffs);

/// Certifies the sector box [k11, k11+k12/2] x [k21, k21+k22/2] x
/// [k31, k31+k32/2] under the alpha = 1 approximation by evaluating the
/// minors at all 8 corners. Stable only if every corner passes.
HurwitzReport verify_sector(const NLPIDGains& gains, double h, const std::string& name = "");

/// LPID as the degenerate (zero-width) box: a single-point check.
HurwitzReport verify_sector(const LPIDGains& gains, double h, const std::string& name = "");

/// The six benchmark subsystems with their effectiveness values.
std::array<SubsystemSpec, 6> subsystem_specs(const QuadParams& params);

/// Runs verify_sector for each channel of a controller bank against the
/// matching subsystem effectiveness. Order: x, y, z, phi, theta, psi.
std::array<HurwitzReport, 6> verify_bank(const std::array<ChannelGains, 6>& gains,
                                         const QuadParams& params);

}  // namespace quadnlpid
