#pragma once

// Frequentist probabilistic calibration of the deterministic ODE model:
// Monte Carlo (or Latin hypercube) sampling, sum-of-squares scoring and
// score-ranked scenario sets.

#include <cstdint>
#include <vector>

#include "chronsti/bayes.h"
#include "chronsti/econ.h"

namespace chronsti {

/// Sum of squared errors between the series and the ODE model under status
/// quo over the 5 years, both high-risk strata and the four alive states.
/// +inf when the engine fails.
double score(const ParameterSet& theta, const CalibrationSeries& data, const ModelSetup& setup);

struct CalibrationOptions {
  int n_samples = 50000;
  std::uint64_t seed = 1;
  bool latin_hypercube = false;
  int workers = 1;
  double lower_quantile = 0.025;
  double upper_quantile = 0.975;
};

struct CalibrationRun {
  std::vector<ParameterSet> samples;
  std::vector<double> scores;
  std::size_t best_index = 0;
  ParameterSet best_set;
  // Sets at the lower/upper score-ranked quantile positions.
  std::size_t lower_index = 0, upper_index = 0;
  ParameterSet lower_set, upper_set;

  /// Sample indices in ascending score order (ties by index).
  std::vector<std::size_t> ranking() const;
};

/// Calibrated parameters are drawn independently from their evidence
/// posteriors (priors where no direct evidence exists); every other
/// parameter is held at its evidence-posterior or prior mean.
CalibrationRun calibrate(const PriorSet& priors, const EvidenceData& data, const ModelSetup& setup,
                         const CalibrationOptions& opts);

/// Builds a run from explicit samples; used by calibrate() and by tests.
CalibrationRun score_samples(std::vector<ParameterSet> samples, const CalibrationSeries& data,
                             const ModelSetup& setup, const CalibrationOptions& opts);

/// Point estimate of the non-calibrated parameters used alongside each sample.
ParameterSet calibration_baseline(const PriorSet& priors, const EvidenceData& data);

struct ScenarioIcers {
  double point = 0.0;  // best set
  double lower = 0.0;  // set at the lower quantile position
  double upper = 0.0;
};

/// Deterministic ICER of one parameter set.
double deterministic_icer(const ParameterSet& theta, const ModelSetup& setup, const EconConfig& cfg);

ScenarioIcers scenario_quantiles(const CalibrationRun& run, const ModelSetup& setup, const EconConfig& cfg);

}  // namespace chronsti
