#pragma once

// Bayesian calibration of either engine: joint log posterior over the
// evidence and the five-year calibration series, an adaptive component-wise
// Metropolis-within-Gibbs sampler, and the potential scale reduction factor.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "chronsti/evidence.h"
#include "chronsti/markov.h"
#include "chronsti/ode.h"
#include "chronsti/priors.h"

namespace chronsti {

class UndefinedDiagnostic : public Error {
 public:
  using Error::Error;
};

// Poisson means are floored at this value before evaluating the calibration
// likelihood; it only binds for numerically empty compartments.
inline constexpr double kCalibrationMeanFloor = 0.1;

struct ModelSetup {
  CohortState initial;
  OdeConfig ode;        // solver step and horizon of full trajectories
  MarkovConfig markov;  // cycle length and horizon of full trajectories

  static ModelSetup case_study();
};

class Posterior {
 public:
  Posterior(EvidenceData data, EngineKind engine, ModelSetup setup, bool use_likelihood = true);
  Posterior(EvidenceData data, EngineKind engine, ModelSetup setup, PriorSet priors,
            bool use_likelihood = true);

  EngineKind engine() const { return engine_; }
  const PriorSet& priors() const { return priors_; }
  const EvidenceData& data() const { return data_; }
  const ModelSetup& setup() const { return setup_; }
  bool uses_likelihood() const { return use_likelihood_; }

  /// Model counts over the calibration window under status quo.
  CalibrationSeries model_series(const ParameterSet& theta) const;

  /// Sum over t, both high-risk strata and the four alive states of
  /// log Poisson(y | max(0.1, model count)).
  double calibration_log_likelihood(const ParameterSet& theta) const;

  /// Terms that depend on calibrated parameters: their priors, their direct
  /// evidence, and the calibration likelihood. -inf outside the support or
  /// when the engine fails.
  double log_conditional(const ParameterSet& theta) const;

  /// Full unnormalized log posterior density.
  double log_density(const ParameterSet& theta) const;

 private:
  EvidenceData data_;
  EngineKind engine_;
  ModelSetup setup_;
  PriorSet priors_;
  bool use_likelihood_;
};

/// Log posterior with the case-study priors and model setup.
double log_posterior(const ParameterSet& theta, const EvidenceData& data, EngineKind engine);

struct MCMCConfig {
  int n_chains = 2;
  int burn_in = 2000;
  int n_keep = 500;
  int adaptation_window = 50;
  double target_acceptance = 0.3;  // adaptation aims for 20-40%
  // Initial random-walk scales on the unconstrained scale; zero entries
  // are replaced by half the evidence-posterior standard deviation.
  std::array<double, kNumParams> initial_scales{};
  std::uint64_t seed = 1;
  int workers = 1;

  void validate() const;  // throws InvalidParameters
};

struct ChainStats {
  std::array<double, kNumParams> acceptance_rate{};  // post burn-in, calibrated only
  std::array<double, kNumParams> final_scale{};
};

struct PosteriorDraws {
  EngineKind engine = EngineKind::Markov;
  int n_chains = 0;
  int n_keep = 0;
  std::vector<ParameterSet> draws;  // chain-major
  std::vector<ChainStats> chain_stats;
  std::array<double, kNumParams> rhat{};  // NaN where undefined
  std::array<ParamRole, kNumParams> roles{};
  // Per draw: {status quo, vaccination}; filled by attach_trajectories.
  std::vector<std::array<Trajectory, 2>> trajectories;

  std::vector<double> chain_series(ParamId id, int chain) const;
  double posterior_mean(ParamId id) const;
  double max_rhat() const;
  bool converged(double threshold = 1.1) const;
};

/// Runs n_chains independent chains. Conjugate-updated parameters are drawn
/// from their closed-form posteriors and fixed-prior parameters from their
/// priors each sweep; calibrated parameters are updated one at a time by
/// random-walk Metropolis on the log or logit scale. Proposal scales adapt
/// during burn-in only. Kept draws are unthinned.
PosteriorDraws sample(const MCMCConfig& cfg, const Posterior& posterior);

/// Runs the posterior's engine for both interventions for every draw over
/// the setup's full horizon.
void attach_trajectories(PosteriorDraws& draws, const ModelSetup& setup, int workers = 1);

/// Full-horizon trajectory of one engine for one parameter set.
Trajectory simulate(EngineKind engine, const ParameterSet& theta, const ModelSetup& setup,
                    Intervention intervention);

/// Potential scale reduction of one parameter. With `split` each chain is
/// halved first. Requires >= 2 chains of equal length >= 10; throws
/// UndefinedDiagnostic when the within-chain variance is zero.
double gelman_rubin(std::span<const std::vector<double>> chains, bool split = true);

}  // namespace chronsti
