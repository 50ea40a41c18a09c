#include "quadnlpid/presets.hpp"

namespace quadnlpid {

namespace {

std::array<ChannelGains, 6> lpid_preset() {
  // Order: x, y, z, phi, theta, psi. Fields: kp, ki, kd.
  return {
      ChannelGains{LPIDGains{0.28, 2.73e-6, 0.63}},
      ChannelGains{LPIDGains{0.36, 1.56e-5, 0.88}},
      ChannelGains{LPIDGains{184.02, 103.73, 22.5}},
      ChannelGains{LPIDGains{0.88, 0.9, 0.3}},
      ChannelGains{LPIDGains{0.62, 0.81, 0.05}},
      ChannelGains{LPIDGains{0.99, 0.49, 0.56}},
  };
}

std::array<ChannelGains, 6> nlpid_preset() {
  // Fields: k11 k12 k21 k22 k31 k32 mu1 mu2 mu3 alpha1 alpha2 alpha3.
  return {
      ChannelGains{NLPIDGains{1.51, 0.04, 1.13, 0.18, 1.81e-6, 1e-6,
                              0.11, 0.08, 0.18, 0.93, 0.93, 0.95}},
      ChannelGains{NLPIDGains{1.38, 0.03, 2.51, 0.04, 5.72e-5, 8.69e-6,
                              0.08, 0.36, 0.6, 0.93, 0.92, 0.93}},
      ChannelGains{NLPIDGains{27.5, 8.76, 8.8, 4.71, 18.49, 10.02,
                              0.31, 0.36, 0.98, 0.96, 0.97, 0.97}},
      ChannelGains{NLPIDGains{0.77, 0.06, 0.2, 0.04, 1.08, 0.08,
                              0.07, 0.56, 0.58, 0.96, 0.96, 0.97}},
      ChannelGains{NLPIDGains{0.48, 0.03, 0.08, 0.12, 0.88, 0.11,
                              0.84, 1.43, 0.28, 0.96, 1.0, 0.97}},
      ChannelGains{NLPIDGains{0.76, 0.16, 0.17, 0.11, 0.27, 0.08,
                              0.25, 0.46, 0.81, 0.98, 0.95, 0.92}},
  };
}

}  // namespace

std::array<ChannelGains, 6> controller_preset(const std::string& name) {
  if (name == "paper-lpid") return lpid_preset();
  if (name == "paper-nlpid") return nlpid_preset();
  throw ConfigError("unknown controller preset: " + name);
}

TrajectorySpec trajectory_preset(const std::string& name) {
  TrajectorySpec spec;
  if (name == "step") {
    spec.kind = TrajectoryKind::Step;
    spec.t_final = 20.0;
    return spec;
  }
  if (name == "case1-circle") {
    spec.kind = TrajectoryKind::Circular;
    spec.t_final = 50.0;
    return spec;
  }
  if (name == "case2-helix") {
    spec.kind = TrajectoryKind::Helical;
    spec.t_final = 100.0;
    return spec;
  }
  if (name == "case3-square") {
    spec.kind = TrajectoryKind::Square;
    spec.t_final = 100.0;
    return spec;
  }
  throw ConfigError("unknown trajectory preset: " + name);
}

std::vector<std::string> controller_preset_names() { return {"paper-lpid", "paper-nlpid"}; }

std::vector<std::string> trajectory_preset_names() {
  return {"step", "case1-circle", "case2-helix", "case3-square"};
}

RigidBodyState benchmark_initial_state() {
  RigidBodyState s;
  s.x = 0.1;
  s.y = 0.1;
  s.z = 0.1;
  return s;
}

Scenario make_preset_scenario(const std::string& controller_name,
                              const std::string& trajectory_name) {
  Scenario sc;
  sc.gains = controller_preset(controller_name);
  sc.trajectory = trajectory_preset(trajectory_name);
  sc.initial_state = benchmark_initial_state();
  sc.dt = 1e-3;
  sc.t_final = sc.trajectory.t_final;
  return sc;
}

}  // namespace quadnlpid
