#pragma once

// End-to-end runs of the three model variants on a shared evidence base.

#include <array>
#include <optional>

#include "chronsti/bayes.h"
#include "chronsti/calibrate.h"
#include "chronsti/econ.h"

namespace chronsti {

struct BayesResult {
  PosteriorDraws draws;
  std::vector<PsaDraw> psa;
  CeaResult cea;
  double sample_seconds = 0.0;
  double trajectory_seconds = 0.0;
  double econ_seconds = 0.0;
  double seconds() const { return sample_seconds + trajectory_seconds + econ_seconds; }
};

/// Samples the posterior, runs both interventions for every draw and
/// evaluates the PSA. Uses the engine's default priors unless given.
BayesResult run_bayes(EngineKind engine, const EvidenceData& data, const ModelSetup& setup, const MCMCConfig& mcmc,
                      const EconConfig& econ, const std::optional<PriorSet>& priors = std::nullopt);

struct DodeResult {
  CalibrationRun run;
  ScenarioIcers icers;
  std::array<Trajectory, 2> best;  // status quo, vaccination
  PsaDraw outcome;
  double seconds = 0.0;
};

DodeResult run_dode(const EvidenceData& data, const ModelSetup& setup, const CalibrationOptions& opts,
                    const EconConfig& econ, const std::optional<PriorSet>& priors = std::nullopt);

/// Pointwise posterior mean over draws; draws must carry trajectories.
Trajectory mean_trajectory(const PosteriorDraws& draws, Intervention intervention);

}  // namespace chronsti
