#include "quadnlpid/stability.hpp"

#include <algorithm>
#include <cmath>

namespace quadnlpid {

std::array<double, 4> char_poly(double k1, double k2, double k3, double h) {
  return {1.0, h * k2, h * k1, h * k3};
}

std::array<double, 3> hurwitz_minors(const std::array<double, 4>& c) {
  const double a2 = c[1], a1 = c[2], a0 = c[3];
  const double delta1 = a2;
  const double delta2 = a2 * a1 - a0;
  const double delta3 = a0 * delta2;
  return {delta1, delta2, delta3};
}

namespace {

HurwitzReport verify_box(double k11, double k12, double k21, double k22, double k31,
                         double k32, double h, const std::string& name,
                         double max_alpha_deviation) {
  HurwitzReport report;
  report.name = name;
  report.h = h;
  report.max_alpha_deviation = max_alpha_deviation;

  // Zero-width dimensions collapse to a single endpoint, so a constant-gain
  // set degenerates to one corner.
  const auto ends = [](double lo, double width) {
    return width == 0.0 ? std::vector<double>{lo} : std::vector<double>{lo, lo + 0.5 * width};
  };
  const std::vector<double> k1_ends = ends(k11, k12);
  const std::vector<double> k2_ends = ends(k21, k22);
  const std::vector<double> k3_ends = ends(k31, k32);

  report.stable = true;
  for (double k1 : k1_ends) {
    for (double k2 : k2_ends) {
      for (double k3 : k3_ends) {
        const auto minors = hurwitz_minors(char_poly(k1, k2, k3, h));
        CornerResult corner;
        corner.k1 = k1;
        corner.k2 = k2;
        corner.k3 = k3;
        corner.delta1 = minors[0];
        corner.delta2 = minors[1];
        corner.delta3 = minors[2];
        corner.stable = minors[0] > 0.0 && minors[1] > 0.0 && minors[2] > 0.0;
        report.stable = report.stable && corner.stable;
        report.corner_results.push_back(corner);
      }
    }
  }

  // The small-gain inequality in its stated form: the derivative gain floor
  // must exceed the integral floor over h times the proportional ceiling.
  report.k21 = k21;
  report.k21_required = k31 / (h * (k11 + 0.5 * k12));
  report.inequality_holds = report.k21 > report.k21_required;
  return report;
}

}  // namespace

HurwitzReport verify_sector(const NLPIDGains& g, double h, const std::string& name) {
  const double dev = std::max({std::abs(g.alpha1 - 1.0), std::abs(g.alpha2 - 1.0),
                               std::abs(g.alpha3 - 1.0)});
  return verify_box(g.k11, g.k12, g.k21, g.k22, g.k31, g.k32, h, name, dev);
}

HurwitzReport verify_sector(const LPIDGains& g, double h, const std::string& name) {
  // Constant gains are the zero-width box: k_i1 = gain, k_i2 = 0.
  return verify_box(g.kp, 0.0, g.kd, 0.0, g.ki, 0.0, h, name, 0.0);
}

std::array<SubsystemSpec, 6> subsystem_specs(const QuadParams& p) {
  return {SubsystemSpec{"x", 1.0},          SubsystemSpec{"y", 1.0},
          SubsystemSpec{"z", 1.0 / p.m},    SubsystemSpec{"phi", 1.0 / p.Ix},
          SubsystemSpec{"theta", 1.0 / p.Iy}, SubsystemSpec{"psi", 1.0 / p.Iz}};
}

std::array<HurwitzReport, 6> verify_bank(const std::array<ChannelGains, 6>& gains,
                                         const QuadParams& params) {
  const auto specs = subsystem_specs(params);
  std::array<HurwitzReport, 6> reports;
  for (std::size_t i = 0; i < 6; ++i) {
    reports[i] = std::visit(
        [&](const auto& g) { return verify_sector(g, specs[i].h, specs[i].name); },
        gains[i]);
  }
  return reports;
}

}  // namespace quadnlpid
