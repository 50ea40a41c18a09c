#include "quadnlpid/tuning.hpp"

#include "quadnlpid/presets.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace quadnlpid {

std::size_t family_dim(ControllerFamily family) {
  return family == ControllerFamily::NLPID ? 12u : 3u;
}

std::array<ChannelGains, 6> decode_gains(const Eigen::VectorXd& gamma, ControllerFamily family) {
  const auto per = family_dim(family);
  if (gamma.size() != static_cast<Eigen::Index>(per * 6)) {
    throw ConfigError("gain vector: wrong length for family");
  }
  std::array<ChannelGains, 6> out;
  for (std::size_t c = 0; c < 6; ++c) {
    const auto base = static_cast<Eigen::Index>(c * per);
    if (family == ControllerFamily::NLPID) {
      NLPIDGains g;
      g.k11 = gamma[base + 0];
      g.k12 = gamma[base + 1];
      g.k21 = gamma[base + 2];
      g.k22 = gamma[base + 3];
      g.k31 = gamma[base + 4];
      g.k32 = gamma[base + 5];
      g.mu1 = gamma[base + 6];
      g.mu2 = gamma[base + 7];
      g.mu3 = gamma[base + 8];
      g.alpha1 = gamma[base + 9];
      g.alpha2 = gamma[base + 10];
      g.alpha3 = gamma[base + 11];
      out[c] = g;
    } else {
      LPIDGains g;
      g.kp = gamma[base + 0];
      g.kd = gamma[base + 1];
      g.ki = gamma[base + 2];
      out[c] = g;
    }
  }
  return out;
}

Eigen::VectorXd encode_gains(const std::array<ChannelGains, 6>& gains, ControllerFamily family) {
  const auto per = family_dim(family);
  Eigen::VectorXd gamma(static_cast<Eigen::Index>(per * 6));
  for (std::size_t c = 0; c < 6; ++c) {
    const auto base = static_cast<Eigen::Index>(c * per);
    if (family == ControllerFamily::NLPID) {
      const auto* g = std::get_if<NLPIDGains>(&gains[c]);
      if (!g) throw ConfigError("gain vector: channel is not in the requested family");
      gamma[base + 0] = g->k11;
      gamma[base + 1] = g->k12;
      gamma[base + 2] = g->k21;
      gamma[base + 3] = g->k22;
      gamma[base + 4] = g->k31;
      gamma[base + 5] = g->k32;
      gamma[base + 6] = g->mu1;
      gamma[base + 7] = g->mu2;
      gamma[base + 8] = g->mu3;
      gamma[base + 9] = g->alpha1;
      gamma[base + 10] = g->alpha2;
      gamma[base + 11] = g->alpha3;
    } else {
      const auto* g = std::get_if<LPIDGains>(&gains[c]);
      if (!g) throw ConfigError("gain vector: channel is not in the requested family");
      gamma[base + 0] = g->kp;
      gamma[base + 1] = g->kd;
      gamma[base + 2] = g->ki;
    }
  }
  return gamma;
}

void GaBounds::validate() const {
  if (lower.size() != upper.size() || lower.size() == 0) {
    throw ConfigError("ga bounds: lower/upper size mismatch");
  }
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) throw ConfigError("ga bounds: lower must be < upper");
  }
}

GaBounds default_bounds(ControllerFamily family) {
  // Per parameter role, the box spans [1e-7, 4x the largest preset value in
  // that role]; exponents are confined near 1 where the certificate holds.
  GaBounds b;
  const auto preset =
      controller_preset(family == ControllerFamily::NLPID ? "paper-nlpid" : "paper-lpid");
  const auto per = family_dim(family);
  const auto dim = static_cast<Eigen::Index>(per * 6);
  Eigen::VectorXd role_max = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(per));
  const Eigen::VectorXd flat = encode_gains(preset, family);
  for (std::size_t c = 0; c < 6; ++c) {
    for (std::size_t k = 0; k < per; ++k) {
      role_max[static_cast<Eigen::Index>(k)] =
          std::max(role_max[static_cast<Eigen::Index>(k)],
                   flat[static_cast<Eigen::Index>(c * per + k)]);
    }
  }
  b.lower = Eigen::VectorXd::Constant(dim, 1e-7);
  b.upper.resize(dim);
  for (std::size_t c = 0; c < 6; ++c) {
    for (std::size_t k = 0; k < per; ++k) {
      const auto i = static_cast<Eigen::Index>(c * per + k);
      const bool is_alpha = family == ControllerFamily::NLPID && k >= 9;
      if (is_alpha) {
        b.lower[i] = 0.5;
        b.upper[i] = 1.2;
      } else {
        b.upper[i] = 4.0 * role_max[static_cast<Eigen::Index>(k)];
      }
    }
  }
  return b;
}

void GaConfig::validate() const {
  if (population < 2) throw ConfigError("ga: population must be >= 2");
  if (generations < 1) throw ConfigError("ga: generations must be >= 1");
  if (crossover_prob < 0.0 || crossover_prob > 1.0 || mutation_prob < 0.0 ||
      mutation_prob > 1.0) {
    throw ConfigError("ga: probabilities must lie in [0, 1]");
  }
  if (!(mutation_scale > 0.0)) throw ConfigError("ga: mutation_scale must be positive");
  if (tournament < 1 || tournament > population) {
    throw ConfigError("ga: tournament size must lie in [1, population]");
  }
  bounds.validate();
}

GaResult ga_optimize(const GaConfig& cfg, const FitnessFn& fitness) {
  cfg.validate();
  const Eigen::Index dim = cfg.bounds.lower.size();
  const Eigen::VectorXd range = cfg.bounds.upper - cfg.bounds.lower;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const auto clamp_to_bounds = [&](Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      v[i] = std::clamp(v[i], cfg.bounds.lower[i], cfg.bounds.upper[i]);
    }
  };

  // Genes with positive boxes seed log-uniformly: gain ranges span many
  // decades, and a linear-uniform draw makes almost every candidate a
  // huge-gain one that flips the vehicle, starving the first generations
  // of viable parents.  Sign-indefinite boxes (test fitnesses) stay
  // uniform.  Either way one stream draw per gene keeps runs comparable.
  std::vector<Eigen::VectorXd> pop(static_cast<std::size_t>(cfg.population));
  for (auto& ind : pop) {
    ind.resize(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double u = unit(rng);
      if (cfg.bounds.lower[i] > 0.0) {
        const double log_lo = std::log(cfg.bounds.lower[i]);
        const double log_hi = std::log(cfg.bounds.upper[i]);
        ind[i] = std::exp(log_lo + u * (log_hi - log_lo));
      } else {
        ind[i] = cfg.bounds.lower[i] + u * range[i];
      }
    }
  }

  // Candidates are generated sequentially by the seeded stream; evaluation
  // consumes no randomness, so any evaluation order gives the same result.
  const auto evaluate = [&](const std::vector<Eigen::VectorXd>& xs) {
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = fitness(xs[i]);
    return fs;
  };

  std::vector<double> fit = evaluate(pop);

  const auto best_index = [&]() {
    return static_cast<std::size_t>(
        std::min_element(fit.begin(), fit.end()) - fit.begin());
  };

  GaResult result;
  std::size_t bi = best_index();
  result.best = pop[bi];
  result.best_fitness = fit[bi];
  result.history.push_back(result.best_fitness);

  std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
  const auto tournament_select = [&]() {
    std::size_t winner = pick(rng);
    for (int k = 1; k < cfg.tournament; ++k) {
      const std::size_t challenger = pick(rng);
      if (fit[challenger] < fit[winner]) winner = challenger;
    }
    return winner;
  };

  for (int gen = 0; gen < cfg.generations; ++gen) {
    // Useful gain regions can be orders of magnitude narrower than the
    // search box, so a single mutation step size cannot both roam the box
    // and polish a basin.  Each child therefore draws its sigma from a
    // two-kernel mixture: half mutate at the configured scale (explorers),
    // half at a scale annealed geometrically to 1% of it (refiners).
    const double frac =
        cfg.generations > 1 ? static_cast<double>(gen) / (cfg.generations - 1) : 0.0;
    const double sigma_hi = cfg.mutation_scale;
    const double sigma_lo = cfg.mutation_scale * std::pow(0.01, frac);

    std::vector<Eigen::VectorXd> next;
    next.reserve(pop.size());
    next.push_back(pop[best_index()]);  // elitism of one

    while (next.size() < pop.size()) {
      const auto pa = tournament_select();
      const auto pb = tournament_select();
      Eigen::VectorXd child_a = pop[pa];
      Eigen::VectorXd child_b = pop[pb];
      if (unit(rng) < cfg.crossover_prob) {
        for (Eigen::Index i = 0; i < dim; ++i) {
          if (unit(rng) < 0.5) std::swap(child_a[i], child_b[i]);
        }
      }
      for (auto* child : {&child_a, &child_b}) {
        const double sigma_scale = unit(rng) < 0.5 ? sigma_lo : sigma_hi;
        for (Eigen::Index i = 0; i < dim; ++i) {
          if (unit(rng) < cfg.mutation_prob) {
            (*child)[i] += gauss(rng) * sigma_scale * range[i];
          }
        }
        clamp_to_bounds(*child);
        if (next.size() < pop.size()) next.push_back(*child);
      }
    }

    pop = std::move(next);
    fit = evaluate(pop);
    bi = best_index();
    if (fit[bi] < result.best_fitness) {
      result.best = pop[bi];
      result.best_fitness = fit[bi];
    }
    result.history.push_back(result.best_fitness);
  }
  return result;
}

double gain_fitness(const Eigen::VectorXd& gamma, ControllerFamily family,
                    const Scenario& scenario, const OpiWeights& weights) {
  Scenario sc = scenario;
  sc.gains = decode_gains(gamma, family);
  const SimLog log = simulate(sc);
  if (log.diverged) {
    const double lost = sc.t_final - std::max(log.divergence_time, 0.0);
    return kDivergencePenalty + 1e6 * lost;
  }
  const MetricsReport rep = compute_metrics(log, sc.trajectory, weights);
  const double value = rep.opi_result.total;
  if (!std::isfinite(value)) return kDivergencePenalty;
  return value;
}

}  // namespace quadnlpid
