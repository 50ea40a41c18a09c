/**
 * @file tuning.hpp
 * @brief Genetic-algorithm gain search: flattened gain-vector codec,
 *        simulation-backed fitness, and a deterministic tournament GA.
 */
#pragma once

#include "quadnlpid/metrics.hpp"
#include "quadnlpid/simengine.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace quadnlpid {

enum class ControllerFamily { LPID, NLPID };

/// Per-channel parameter count of the flattened gain vector.
/// NLPID layout per channel: k11 k12 k21 k22 k31 k32 mu1 mu2 mu3
/// alpha1 alpha2 alpha3; LPID layout: kp kd ki.
std::size_t family_dim(ControllerFamily family);

/// Decodes a flattened vector (six channel blocks in order x, y, z, phi,
/// theta, psi) into a controller bank. Throws ConfigError on bad size.
std::array<ChannelGains, 6> decode_gains(const Eigen::VectorXd& gamma, ControllerFamily family);

/// Inverse of decode_gains.
Eigen::VectorXd encode_gains(const std::array<ChannelGains, 6>& gains, ControllerFamily family);

/// Box bounds over the flattened vector.
struct GaBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  void validate() const;
};

/// Default search box: every coefficient in [1e-7, 4x the largest value the
/// shipped preset uses in that parameter role]; exponents in [0.5, 1.2].
GaBounds default_bounds(ControllerFamily family);

struct GaConfig {
  int population = 40;
  int generations = 50;
  double crossover_prob = 0.9;
  double mutation_prob = 0.1;
  double mutation_scale = 0.1;  ///< sigma as a fraction of each bound range;
                                ///< half the children instead use a copy
                                ///< annealed to 1% of it by the last
                                ///< generation
  int tournament = 3;
  std::uint64_t seed = 1;
  GaBounds bounds;

  void validate() const;
};

struct GaResult {
  Eigen::VectorXd best;
  double best_fitness = 0;
  std::vector<double> history;  ///< best-so-far after each generation
};

using FitnessFn = std::function<double(const Eigen::VectorXd&)>;

/// Tournament selection, uniform crossover, bounded Gaussian mutation,
/// elitism of one. All randomness comes from the config seed and is drawn
/// on the sequential evolutionary loop; evaluations receive none, so the
/// result is deterministic under any evaluation schedule.
GaResult ga_optimize(const GaConfig& config, const FitnessFn& fitness);

inline constexpr double kDivergencePenalty = 1e9;

/// OPI of a closed-loop run of `scenario` with the candidate's gains
/// installed. Diverged or non-finite runs return
/// kDivergencePenalty + 1e6 x (seconds of horizon lost), so earlier
/// blow-ups score worse.
double gain_fitness(const Eigen::VectorXd& gamma, ControllerFamily family,
                    const Scenario& scenario, const OpiWeights& weights = OpiWeights{});

}  // namespace quadnlpid
