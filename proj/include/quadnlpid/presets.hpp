/**
 * @file presets.hpp
 * @brief Built-in controller gain sets and benchmark trajectories,
 *        addressable by name from configs and the command line.
 */
#pragma once

#include "quadnlpid/simengine.hpp"

#include <string>
#include <vector>

namespace quadnlpid {

/// Names accepted: "paper-lpid", "paper-nlpid".
std::array<ChannelGains, 6> controller_preset(const std::string& name);

/// Names accepted: "step", "case1-circle", "case2-helix", "case3-square".
TrajectorySpec trajectory_preset(const std::string& name);

std::vector<std::string> controller_preset_names();
std::vector<std::string> trajectory_preset_names();

/// Benchmark initial condition: x = y = z = 0.1, everything else zero.
RigidBodyState benchmark_initial_state();

/// Assembles a ready-to-run scenario from preset names. dt defaults to
/// 1e-3; t_final defaults to the trajectory's own horizon.
Scenario make_preset_scenario(const std::string& controller_name,
                              const std::string& trajectory_name);

}  // namespace quadnlpid
