#pragma once

// Discrete-time dynamic Markov cohort model. The infection probability of
// each cycle is rebuilt from the current prevalence before the cohort is
// redistributed across states.

#include "chronsti/model.h"

namespace chronsti {

// Rows are origin states, columns destination states.
using TransitionMatrix = std::array<std::array<double, kNumStates>, kNumStates>;

struct MarkovConfig {
  int horizon_cycles = 100;
  double cycle_length = 1.0;  // years
  // Freeze the force of infection at its time-zero value (static model).
  bool static_force = false;

  void validate() const;  // throws InvalidParameters
};

/// Per-cycle probability corresponding to a yearly probability, through the
/// constant-rate transform. Exact identity for a one-year cycle.
double cycle_probability(double yearly_probability, double cycle_length);

/// Matrix for one stratum given the stratum's yearly force of infection.
/// ParameterSet transition parameters are yearly probabilities.
/// Throws ProbabilityOverflow if any row's exit mass exceeds 1.
TransitionMatrix build_matrix_from_force(double lambda, const ParameterSet& params,
                                         double cycle_length = 1.0);

/// Matrix for one stratum with the force of infection taken from `state`.
TransitionMatrix build_matrix(const CohortState& state, const ParameterSet& params,
                              Stratum stratum, Intervention intervention,
                              double cycle_length = 1.0);

/// One state-allocation step: n' = P^T n per stratum, then births of
/// chi * cycle_length * N_alive into Susceptible. `time` advances by one cycle.
CohortState step(const CohortState& state, const std::array<TransitionMatrix, kNumStrata>& matrices,
                 double chi, double cycle_length = 1.0);

/// Iterates build_matrix + step for cfg.horizon_cycles and returns every
/// state including the initial one. ProbabilityOverflow carries the cycle.
Trajectory run(const CohortState& init, const ParameterSet& params, const MarkovConfig& cfg,
               Intervention intervention);

}  // namespace chronsti
