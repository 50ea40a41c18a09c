/**
 * @file simengine.hpp
 * @brief Fixed-step closed-loop simulation: RK4 on the rigid-body model
 *        under the cascade controller, full time-series logging.
 */
#pragma once

#include "quadnlpid/control.hpp"
#include "quadnlpid/dynamics.hpp"
#include "quadnlpid/trajectories.hpp"
#include "quadnlpid/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace quadnlpid {

/// Complete description of one closed-loop run.
struct Scenario {
  QuadParams params{};
  std::array<ChannelGains, 6> gains{};  ///< order x, y, z, phi, theta, psi
  TrajectorySpec trajectory{};
  RigidBodyState initial_state{};
  WindDisturbance wind{};
  double dt = 1e-3;          ///< s, integration step
  double t_final = 20.0;     ///< s
  int controller_rate = 1;   ///< controller tick every this many steps

  void validate() const;
};

/// One logged instant.
struct SimLogRow {
  double t = 0;
  RigidBodyState state;
  ReferenceSample ref;
  double Ux = 0, Uy = 0;                      ///< virtual accelerations
  double Uz = 0, Uphi = 0, Utheta = 0, Upsi = 0;  ///< applied wrench
  double phi_de = 0, theta_de = 0;            ///< commanded attitude
};

/// Time series of a run. `diverged` marks early termination after a state
/// magnitude exceeded the divergence threshold; the log is truncated at
/// that instant.
struct SimLog {
  std::vector<SimLogRow> rows;
  bool diverged = false;
  double divergence_time = -1.0;  ///< s, -1 when the run completed
  double dt = 0;
};

inline constexpr double kDivergenceThreshold = 1e6;

/// Number of grid points of a run: floor(t_final/dt) + 1.
std::size_t grid_size(double t_final, double dt);

/// Classical RK4 advance of the rigid-body derivative with the wrench held
/// constant over the step (zero-order hold).
RigidBodyState rk4_step(const RigidBodyState& state, const ControlInputs& inputs,
                        const WindDisturbance& wind, const QuadParams& params, double dt,
                        AltitudeConvention convention = AltitudeConvention::ZUp);

/// Runs the closed loop: controller tick every `controller_rate` steps,
/// controls zero-order-held between ticks, state logged every dt. Divergence
/// (including a mid-run gimbal hit) truncates the log and sets the flag
/// instead of throwing.
SimLog simulate(const Scenario& scenario);

/// CSV export, one row per dt, 9 significant digits. Column order:
/// t, the 12 states, the 4 position/yaw references, the 6 control signals
/// (Ux, Uy, Uz, Uphi, Utheta, Upsi), phi_de, theta_de.
void write_csv(const SimLog& log, std::ostream& out);
void write_csv(const SimLog& log, const std::string& path);

}  // namespace quadnlpid
