/**
 * @file trajectories.hpp
 * @brief Reference generators for the benchmark scenarios: unit steps,
 *        circle, helix, square, with analytic derivatives.
 */
#pragma once

#include <string>
#include <vector>

namespace quadnlpid {

enum class TrajectoryKind { Step, Circular, Helical, Square };

/// Parameters of the four reference shapes. Only the fields relevant to
/// `kind` are consulted.
struct TrajectorySpec {
  TrajectoryKind kind = TrajectoryKind::Step;
  double t_final = 20.0;        ///< s
  double amplitude = 1.0;       ///< m, lateral radius or step height
  double omega = 0.1 * 3.14159265358979323846;  ///< rad/s, circular rate
  double activation_time = 5.0; ///< s, when the lateral path engages
  double climb_rate = 0.2;      ///< m/s, helical z slope
  double z_step = 1.0;          ///< m, step height for z where used
  double psi_step = 1.0;        ///< rad, yaw step height
  double x_on = 10.0, x_off = 50.0;  ///< s, square-path x edge times
  double y_on = 30.0, y_off = 70.0;  ///< s, square-path y edge times

  void validate() const;
};

/// One reference point: desired position/yaw and their exact time
/// derivatives. Step edges carry derivative 0 (the distributional spike is
/// ignored; the cascade only differences smooth references).
struct ReferenceSample {
  double x_de = 0, y_de = 0, z_de = 0, psi_de = 0;
  double x_de_dot = 0, y_de_dot = 0, z_de_dot = 0, psi_de_dot = 0;
};

/// Reference at time t. Throws ConfigError when t is outside [0, t_final].
ReferenceSample sample(const TrajectorySpec& spec, double t);

/// References on the uniform grid {0, dt, ..., t_final},
/// length floor(t_final/dt)+1.
std::vector<ReferenceSample> sample_series(const TrajectorySpec& spec, double dt);

}  // namespace quadnlpid
