#pragma once

// Reference values of the fictional case study: 1,000,000 people, 600
// initially infected, half male, 20% high-risk in each sex.

#include "chronsti/model.h"

namespace chronsti {

/// Initial cohort: per sex 399,760/240 low-risk and 99,940/60 high-risk
/// susceptible/infected.
CohortState case_study_initial_state();

/// Reference parameter means. Transition parameters carry the same numbers
/// for both engines; they are read as yearly rates by the ODE engine and as
/// yearly probabilities by the Markov engine.
ParameterSet case_study_reference();

/// Same parameters with the transition rates mapped to the yearly
/// probabilities of a constant-rate process (p = 1 - exp(-rate)).
ParameterSet rates_to_yearly_probabilities(const ParameterSet& ode_params);

}  // namespace chronsti
