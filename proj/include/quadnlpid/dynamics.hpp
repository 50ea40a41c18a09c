/**
 * @file dynamics.hpp
 * @brief Six-DOF rigid-body model of an X-free cross quadrotor: attitude
 *        kinematics, Newton-Euler derivative, rotor mixing.
 */
#pragma once

#include "quadnlpid/types.hpp"

namespace quadnlpid {

/// Body-to-earth rotation for Z-Y-X Euler angles (yaw about z, then pitch
/// about y, then roll about x).
Matrix3d rotation_matrix(double phi, double theta, double psi);

/// Maps body angular rates (p, q, r) to Euler-angle rates
/// (phi_dot, theta_dot, psi_dot).
/// Throws GimbalSingularityError when |cos(theta)| <= eps.
Matrix3d euler_rate_matrix(double phi, double theta, double eps = 1e-6);

/// Time derivative of the 12-dimensional state under the given wrench and
/// wind. `convention` selects the sign convention of the vertical axis; the
/// two variants are exact mirrors of each other under (z, w) -> (-z, -w).
Vector12d state_derivative(const RigidBodyState& state, const ControlInputs& controls,
                           const QuadParams& params,
                           const WindDisturbance& wind = WindDisturbance{},
                           AltitudeConvention convention = AltitudeConvention::ZUp);

/// Wrench produced by the four rotors: thrust b*sum(omega_i^2), roll/pitch
/// torques from opposing-rotor thrust differentials over the arm length, yaw
/// torque from the alternating drag pattern d*(-w1^2 + w2^2 - w3^2 + w4^2).
ControlInputs mix(const RotorSpeeds& speeds, const QuadParams& params);

/// Inverse of mix(): rotor speeds that realize a wrench. Throws
/// InfeasibleCommandError when any squared speed would be negative.
RotorSpeeds unmix(const ControlInputs& controls, const QuadParams& params);

}  // namespace quadnlpid
