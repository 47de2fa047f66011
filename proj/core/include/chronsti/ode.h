#pragma once

// Deterministic ODE engine: stratified compartment flows with a dynamic
// force of infection, integrated by fixed-step classical Runge-Kutta.

#include "chronsti/model.h"

namespace chronsti {

struct OdeConfig {
  double horizon = 100.0;             // years
  double solver_step = 1.0 / 365.0;   // years
  double report_interval = 1.0;       // years
  // Compare one full step against two half steps at the start of every
  // report interval and keep the largest difference.
  bool estimate_truncation = true;

  void validate() const;  // throws InvalidParameters
};

struct StateDerivative {
  std::array<StateCounts, kNumStrata> counts{};
  StratumValues incidence{};        // new infections per year
  StratumValues morbid_entries{};   // Asymptomatic -> Morbid per year
};

struct OdeSolution {
  Trajectory trajectory;
  long steps = 0;
  double max_truncation_estimate = 0.0;  // persons
};

/// Right-hand side of the ODE system for every stratum. Transition
/// parameters are read as yearly rates.
StateDerivative derivatives(const CohortState& state, const ParameterSet& params,
                            Intervention intervention);

/// Integrates from `init` (time taken from init.time) over cfg.horizon.
/// Snapshots are recorded at every report interval including time zero.
/// Throws NegativeState when a compartment falls below -1e-9.
OdeSolution integrate(const CohortState& init, const ParameterSet& params, const OdeConfig& cfg,
                      Intervention intervention);

}  // namespace chronsti
