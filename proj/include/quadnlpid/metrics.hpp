/**
 * @file metrics.hpp
 * @brief Performance figures of a run: ITAE and control-energy integrals,
 *        step-response timings, peak extrema, steady-state error, and the
 *        composite weighted index used as the tuning objective.
 */
#pragma once

#include "quadnlpid/simengine.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace quadnlpid {

/// Step-response timings. Fields are empty when the response never crosses
/// the needed thresholds (reported, not thrown).
struct StepMetrics {
  std::optional<double> tr;  ///< s, 10% -> 90% rise time
  std::optional<double> ts;  ///< s, last entry into the +-2% band
  double mp = 0;             ///< percent overshoot relative to the reference level
};

/// Per-channel figures of one run.
struct ChannelMetrics {
  double itae = 0;     ///< error-units s^2
  double usqr = 0;     ///< control-units^2 s
  StepMetrics step;
  double ss_error_pct = 0;
  double min_peak = 0, max_peak = 0;
};

/// Weights and normalizers of the composite index, per channel
/// (order x, y, z, psi).
struct OpiWeights {
  std::array<double, 4> w1{0.6, 0.6, 0.6, 0.6};
  std::array<double, 4> w2{0.4, 0.4, 0.4, 0.4};
  std::array<double, 4> w_hat{0.25, 0.25, 0.25, 0.25};
  std::array<double, 4> n1{1.0, 1.0, 1.0, 1.0};
  std::array<double, 4> n2{1.0, 1.0, 4500.0, 1.0};  ///< z control energy normalizer

  void validate() const;
};

/// Trapezoidal quadrature of t |e(t)| over the uniform grid.
double itae(const std::vector<double>& error, double dt);

/// Trapezoidal quadrature of u(t)^2.
double usqr(const std::vector<double>& control, double dt);

/// Rise/settling/overshoot of a step response toward `reference`:
/// tr from the 10% to the 90% absolute threshold crossings (linearly
/// interpolated), ts the last time the output enters the +-2% band for
/// good, mp the percent by which the peak exceeds the reference (>= 0).
StepMetrics step_metrics(const std::vector<double>& output, double reference, double dt);

/// Global minimum and maximum of a series.
std::pair<double, double> peak_extrema(const std::vector<double>& series);

/// Mean absolute tracking error over the final `window_fraction` of the
/// run, as a percentage of the reference amplitude.
double steady_state_error_pct(const std::vector<double>& output,
                              const std::vector<double>& reference,
                              double window_fraction, double amplitude);

/// Composite index: per channel w1 ITAE/N1 + w2 USQR/N2, total the
/// w_hat-weighted sum over x, y, z, psi.
struct OpiResult {
  std::array<double, 4> per_channel{};
  double total = 0;
};
OpiResult opi(const std::array<double, 4>& itae_vals, const std::array<double, 4>& usqr_vals,
              const OpiWeights& weights = OpiWeights{});

/// Everything the report file carries, computed from a log.
struct MetricsReport {
  ChannelMetrics x, y, z, psi;   ///< tracked channels
  ChannelMetrics phi, theta;     ///< attitude peaks (no references of their own)
  OpiResult opi_result;
  bool diverged = false;
  double divergence_time = -1.0;
};

/// Computes the full report. Step metrics are filled only for step
/// scenarios (the notion of a single reference level requires one);
/// steady-state error uses the final `ss_window` fraction of the run.
MetricsReport compute_metrics(const SimLog& log, const TrajectorySpec& trajectory,
                              const OpiWeights& weights = OpiWeights{},
                              double ss_window = 0.2);

/// Structured text report keyed by channel, mirroring the tabulated layout
/// (rise/settle/overshoot block, peak block, index block).
void write_report(const MetricsReport& report, std::ostream& out);
void write_report(const MetricsReport& report, const std::string& path);

/// Side-by-side variant of write_report for two runs of the same scenario.
/// A diverged run keeps its column, flagged, without disturbing the other.
void write_compare_report(const MetricsReport& a, const MetricsReport& b,
                          const std::string& label_a, const std::string& label_b,
                          std::ostream& out);

}  // namespace quadnlpid
