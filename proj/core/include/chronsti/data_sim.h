#pragma once

// Synthetic evidence base: partner-count registry, binomial evidence and a
// noisy five-year calibration series generated by the ODE engine.

#include <cstdint>
#include <map>

#include "chronsti/evidence.h"
#include "chronsti/ode.h"

namespace chronsti {

struct SimRecipe {
  std::uint64_t seed = 20170101;
  int popsize = 500;
  ParameterSet reference;       // read with ODE semantics
  CohortState initial;
  std::map<ParamId, std::int64_t> binomial_trials;
  bool observation_noise = true;
  OdeConfig ode;                // horizon is overridden to cover the series

  /// Case-study recipe: reference at the published means, initial cohort of one
  /// million, 500 registry members per stratum.
  static SimRecipe case_study(std::uint64_t seed = 20170101);
};

std::array<std::vector<std::int64_t>, kNumStrata> simulate_registry(const SimRecipe& recipe);
std::map<ParamId, BinomialCount> simulate_binomial(const SimRecipe& recipe);
CalibrationSeries simulate_calibration_series(const SimRecipe& recipe);
EvidenceData simulate_evidence(const SimRecipe& recipe);

}  // namespace chronsti
