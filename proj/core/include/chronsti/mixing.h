#pragma once

// Random heterosexual mixing between two behaviour groups per sex and the
// resulting dynamic force of infection.

#include <array>

#include "chronsti/model.h"

namespace chronsti {

struct MixingContext {
  std::array<double, 2> g_high{};    // indexed by Sex
  std::array<double, 2> psi_bar{};   // indexed by Sex

  double g_low(Sex s) const { return 1.0 - g_high[static_cast<std::size_t>(s)]; }
};

/// Probability that a randomly chosen partner of one sex comes from its
/// high-risk group, weighting each group by its partner acquisition rate.
/// Throws DegeneratePopulation when both weighted group sizes are zero.
double mixing_probability_high(double omega_high, double omega_low, double alive_high,
                               double alive_low);

/// Partner-weighted prevalence of one sex. A group with zero alive members
/// may only appear with zero selection probability.
double weighted_prevalence(double g_high, double infected_high, double alive_high,
                           double infected_low, double alive_low);

/// Yearly force of infection on a susceptible with partner rate `omega`.
/// Under status quo pass coverage = 1 and efficacy = 0.
double force_of_infection(double beta, double omega, double psi_bar_opposite, double coverage,
                          double efficacy);

/// Probability of at least one event in a cycle for a constant rate over it.
double rate_to_probability(double rate);
double probability_to_rate(double probability);

/// Mixing context of a cohort snapshot. Only the Infected state is
/// infectious. A sex with nobody alive offers no partners, so its partner
/// prevalence is zero.
MixingContext mixing_context(const CohortState& state, const ParameterSet& params);

/// Coverage and efficacy effectively applied under an intervention.
struct VaccineEffect {
  double coverage;
  double efficacy;
};
VaccineEffect vaccine_effect(const ParameterSet& params, Intervention intervention);

/// Yearly force of infection per stratum (indexed by Stratum::index()).
StratumValues forces_of_infection(const CohortState& state, const ParameterSet& params,
                                  Intervention intervention);

}  // namespace chronsti
