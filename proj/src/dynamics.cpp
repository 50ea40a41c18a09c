#include "quadnlpid/dynamics.hpp"

#include <cmath>

namespace quadnlpid {

Matrix3d rotation_matrix(double phi, double theta, double psi) {
  const double cph = std::cos(phi), sph = std::sin(phi);
  const double cth = std::cos(theta), sth = std::sin(theta);
  const double cps = std::cos(psi), sps = std::sin(psi);
  Matrix3d R;
  R << cps * cth, cps * sph * sth - cph * sps, sph * sps + cph * cps * sth,
       cth * sps, cph * cps + sph * sps * sth, cph * sps * sth - cps * sph,
       -sth,      cth * sph,                   cph * cth;
  return R;
}

Matrix3d euler_rate_matrix(double phi, double theta, double eps) {
  const double cth = std::cos(theta);
  if (std::abs(cth) <= eps) {
    throw GimbalSingularityError(theta);
  }
  const double cph = std::cos(phi), sph = std::sin(phi);
  const double tth = std::tan(theta);
  Matrix3d E;
  E << 1.0, sph * tth, cph * tth,
       0.0, cph,       -sph,
       0.0, sph / cth, cph / cth;
  return E;
}

Vector12d state_derivative(const RigidBodyState& s, const ControlInputs& c,
                           const QuadParams& params, const WindDisturbance& wind,
                           AltitudeConvention convention) {
  const Matrix3d R = rotation_matrix(s.phi, s.theta, s.psi);
  const Matrix3d E = euler_rate_matrix(s.phi, s.theta);
  const Vector3d vel_body(s.u, s.v, s.w);
  const Vector3d rates_body(s.p, s.q, s.r);

  const double cph = std::cos(s.phi), sph = std::sin(s.phi);
  const double cth = std::cos(s.theta), sth = std::sin(s.theta);

  Vector12d ds;
  const Vector3d euler_dot = E * rates_body;

  if (convention == AltitudeConvention::ZDown) {
    const Vector3d pos_dot = R * vel_body;
    ds[0] = pos_dot[0];
    ds[1] = pos_dot[1];
    ds[2] = pos_dot[2];
    ds[6] = s.r * s.v - s.q * s.w - params.g * sth + wind.fwx / params.m;
    ds[7] = -s.r * s.u + s.p * s.w + params.g * sph * cth + wind.fwy / params.m;
    ds[8] = s.q * s.u - s.p * s.v + params.g * cph * cth + (wind.fwz - c.ft) / params.m;
  } else {
    // Mirror of the z-down form under (z, w) -> (-z, -w): z is altitude and
    // positive thrust accelerates the vehicle upward.
    ds[0] = R(0, 0) * s.u + R(0, 1) * s.v - R(0, 2) * s.w;
    ds[1] = R(1, 0) * s.u + R(1, 1) * s.v - R(1, 2) * s.w;
    ds[2] = sth * s.u - cth * sph * s.v + cph * cth * s.w;
    ds[6] = s.r * s.v + s.q * s.w - params.g * sth + wind.fwx / params.m;
    ds[7] = -s.r * s.u - s.p * s.w + params.g * sph * cth + wind.fwy / params.m;
    ds[8] = s.p * s.v - s.q * s.u - params.g * cph * cth + (c.ft - wind.fwz) / params.m;
  }

  ds[3] = euler_dot[0];
  ds[4] = euler_dot[1];
  ds[5] = euler_dot[2];

  ds[9] = ((params.Iy - params.Iz) / params.Ix) * s.r * s.q + (c.tau_x + wind.twx) / params.Ix;
  ds[10] = ((params.Iz - params.Ix) / params.Iy) * s.p * s.r + (c.tau_y + wind.twy) / params.Iy;
  ds[11] = ((params.Ix - params.Iy) / params.Iz) * s.p * s.q + (c.tau_z + wind.twz) / params.Iz;

  return ds;
}

ControlInputs mix(const RotorSpeeds& sp, const QuadParams& params) {
  const double w1 = sp.omega1 * sp.omega1;
  const double w2 = sp.omega2 * sp.omega2;
  const double w3 = sp.omega3 * sp.omega3;
  const double w4 = sp.omega4 * sp.omega4;
  ControlInputs c;
  c.ft = params.b * (w1 + w2 + w3 + w4);
  c.tau_x = params.b * params.l * (w3 - w1);
  c.tau_y = params.b * params.l * (w4 - w2);
  c.tau_z = params.d * (-w1 + w2 - w3 + w4);
  return c;
}

RotorSpeeds unmix(const ControlInputs& c, const QuadParams& params) {
  const double ft4b = c.ft / (4.0 * params.b);
  const double roll = c.tau_x / (2.0 * params.b * params.l);
  const double pitch = c.tau_y / (2.0 * params.b * params.l);
  const double yaw = c.tau_z / (4.0 * params.d);
  const double sq[4] = {ft4b - roll - yaw, ft4b - pitch + yaw,
                        ft4b + roll - yaw, ft4b + pitch + yaw};
  for (double v : sq) {
    if (v < 0.0) throw InfeasibleCommandError{};
  }
  return RotorSpeeds{std::sqrt(sq[0]), std::sqrt(sq[1]), std::sqrt(sq[2]), std::sqrt(sq[3])};
}

}  // namespace quadnlpid
