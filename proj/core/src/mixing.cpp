#include "chronsti/mixing.h"

#include <cmath>

namespace chronsti {

double mixing_probability_high(double omega_high, double omega_low, double alive_high,
                               double alive_low) {
  const double high = omega_high * alive_high;
  const double denom = high + omega_low * alive_low;
  if (!(denom > 0.0))
    throw DegeneratePopulation("partner selection undefined: no partner-weighted population");
  return high / denom;
}

double weighted_prevalence(double g_high, double infected_high, double alive_high,
                           double infected_low, double alive_low) {
  const double g_low = 1.0 - g_high;
  auto term = [](double g, double infected, double alive) {
    if (g == 0.0) return 0.0;
    if (!(alive > 0.0))
      throw DegeneratePopulation("partner group selected with positive probability has no members");
    return g * infected / alive;
  };
  return term(g_high, infected_high, alive_high) + term(g_low, infected_low, alive_low);
}

double force_of_infection(double beta, double omega, double psi_bar_opposite, double coverage,
                          double efficacy) {
  const double unprotected = beta * omega * psi_bar_opposite;
  return coverage * (1.0 - efficacy) * unprotected + (1.0 - coverage) * unprotected;
}

double rate_to_probability(double rate) { return -std::expm1(-rate); }

double probability_to_rate(double probability) { return -std::log1p(-probability); }

MixingContext mixing_context(const CohortState& state, const ParameterSet& params) {
  MixingContext mix;
  for (auto sex : {Sex::Male, Sex::Female}) {
    const Stratum high{sex, Risk::High};
    const Stratum low{sex, Risk::Low};
    const double n_high = state.alive(high);
    const double n_low = state.alive(low);
    const auto idx = static_cast<std::size_t>(sex);
    if (n_high + n_low == 0.0) {
      mix.g_high[idx] = 0.0;
      mix.psi_bar[idx] = 0.0;
      continue;
    }
    mix.g_high[idx] = mixing_probability_high(params.omega(high), params.omega(low), n_high, n_low);
    mix.psi_bar[idx] =
        weighted_prevalence(mix.g_high[idx], state.at(high, HealthState::Infected), n_high,
                            state.at(low, HealthState::Infected), n_low);
  }
  return mix;
}

VaccineEffect vaccine_effect(const ParameterSet& params, Intervention intervention) {
  if (intervention == Intervention::StatusQuo) return {1.0, 0.0};
  return {params.alpha(), params.gamma()};
}

StratumValues forces_of_infection(const CohortState& state, const ParameterSet& params,
                                  Intervention intervention) {
  const MixingContext mix = mixing_context(state, params);
  const VaccineEffect vac = vaccine_effect(params, intervention);
  StratumValues lambda{};
  for (auto s : kAllStrata) {
    const double psi = mix.psi_bar[static_cast<std::size_t>(opposite(s.sex))];
    lambda[s.index()] =
        force_of_infection(params.beta(), params.omega(s), psi, vac.coverage, vac.efficacy);
  }
  return lambda;
}

}  // namespace chronsti
