/**
 * @file types.hpp
 * @brief Core vehicle types: physical parameters, rigid-body state, wrench,
 *        rotor speeds, wind.
 */
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace quadnlpid {

using Vector2d = Eigen::Vector2d;
using Vector3d = Eigen::Vector3d;
using Vector4d = Eigen::Vector4d;
using Matrix2d = Eigen::Matrix2d;
using Matrix3d = Eigen::Matrix3d;
using Vector12d = Eigen::Matrix<double, 12, 1>;

/// Thrown when Euler-rate kinematics are evaluated too close to the
/// pitch singularity (cos(theta) below the guard).
class GimbalSingularityError : public std::domain_error {
 public:
  explicit GimbalSingularityError(double theta)
      : std::domain_error("euler kinematics singular: |theta| too close to pi/2"),
        theta_(theta) {}
  double theta() const { return theta_; }

 private:
  double theta_;
};

/// Thrown when a commanded wrench maps to a negative squared rotor speed.
class InfeasibleCommandError : public std::domain_error {
 public:
  InfeasibleCommandError() : std::domain_error("wrench not realizable by nonnegative rotor speeds") {}
};

/// Thrown when the lateral-channel inversion would divide by a collective
/// thrust too close to zero.
class ThrustTooSmallError : public std::domain_error {
 public:
  explicit ThrustTooSmallError(double uz)
      : std::domain_error("collective thrust too small for attitude inversion"), uz_(uz) {}
  double thrust() const { return uz_; }

 private:
  double uz_;
};

/// Thrown on invalid scenario / configuration input.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// sign(x) with sign(0) = 0.
template <typename Scalar>
constexpr Scalar sign(Scalar x) {
  return (x > Scalar{0}) ? Scalar{1} : (x < Scalar{0}) ? Scalar{-1} : Scalar{0};
}

/// Physical constants of the vehicle plus rotor mixing coefficients.
struct QuadParams {
  double Ix = 8.5532e-3;  ///< roll inertia, kg m^2
  double Iy = 8.5532e-3;  ///< pitch inertia, kg m^2
  double Iz = 1.476e-2;   ///< yaw inertia, kg m^2
  double g = 9.81;        ///< gravitational acceleration, m/s^2
  double m = 0.964;       ///< total mass, kg
  double b = 7.66e-5;     ///< thrust coefficient, N s^2
  double d = 5.63e-6;     ///< drag (yaw) coefficient, N m s^2
  double l = 0.22;        ///< motor-to-center arm length, m

  void validate() const {
    const double fields[] = {Ix, Iy, Iz, g, m, b, d, l};
    for (double f : fields) {
      if (!(f > 0.0) || !std::isfinite(f)) {
        throw ConfigError("QuadParams: all fields must be strictly positive and finite");
      }
    }
  }
};

/// Sign convention for the vertical axis of the translational model.
/// ZUp (default): z is altitude, positive thrust raises it.
/// ZDown: the mirrored form with gravity positive along +z; kept for
/// auditing the model against its z-down source convention.
enum class AltitudeConvention { ZUp, ZDown };

/// The 12-dimensional rigid-body state.
/// Position is earth-frame, attitude is Z-Y-X Euler, velocities are
/// body-frame.
struct RigidBodyState {
  double x = 0.0, y = 0.0, z = 0.0;          ///< earth-frame position, m
  double phi = 0.0, theta = 0.0, psi = 0.0;  ///< roll/pitch/yaw, rad
  double u = 0.0, v = 0.0, w = 0.0;          ///< body-frame linear velocity, m/s
  double p = 0.0, q = 0.0, r = 0.0;          ///< body-frame angular velocity, rad/s

  Vector12d to_vector() const {
    Vector12d s;
    s << x, y, z, phi, theta, psi, u, v, w, p, q, r;
    return s;
  }

  static RigidBodyState from_vector(const Vector12d& s) {
    RigidBodyState st;
    st.x = s[0]; st.y = s[1]; st.z = s[2];
    st.phi = s[3]; st.theta = s[4]; st.psi = s[5];
    st.u = s[6]; st.v = s[7]; st.w = s[8];
    st.p = s[9]; st.q = s[10]; st.r = s[11];
    return st;
  }

  bool finite() const { return to_vector().allFinite(); }
};

/// Collective thrust plus three body torques (the applied wrench).
struct ControlInputs {
  double ft = 0.0;     ///< total thrust, N
  double tau_x = 0.0;  ///< roll torque, N m
  double tau_y = 0.0;  ///< pitch torque, N m
  double tau_z = 0.0;  ///< yaw torque, N m
};

/// External wind wrench in body axes. Defaults to zero; no gust model is
/// attached to it.
struct WindDisturbance {
  double fwx = 0.0, fwy = 0.0, fwz = 0.0;  ///< wind force, N
  double twx = 0.0, twy = 0.0, twz = 0.0;  ///< wind torque, N m
};

/// Angular speeds of the four rotors, rad/s (each >= 0).
struct RotorSpeeds {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;
  double omega4 = 0.0;
};

}  // namespace quadnlpid
