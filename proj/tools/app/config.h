#pragma once

// Experiment configuration: one JSON document whose keys mirror the model's
// parameter names. Every field is optional; defaults are the case study.

#include <cstdint>
#include <map>
#include <json.hpp>
#include <string>

#include "chronsti/bayes.h"
#include "chronsti/calibrate.h"
#include "chronsti/data_sim.h"
#include "chronsti/econ.h"

namespace chronsti::app {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ExperimentConfig {
  std::uint64_t seed = 20170101;
  int workers = 1;
  SimRecipe data = SimRecipe::case_study();
  ModelSetup setup = ModelSetup::case_study();
  MCMCConfig mcmc;
  CalibrationOptions calibration;
  EconConfig econ;
  // Keyed by parameter name, optionally prefixed "ode." or "markov." to
  // restrict the override to one engine.
  std::map<std::string, Distribution> prior_overrides;

  /// Propagates seed and workers into the per-module configs.
  void apply_globals();
  PriorSet priors(EngineKind engine) const;
};

/// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& c);

nlohmann::json distribution_to_json(const Distribution& d);
Distribution distribution_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace chronsti::app
