#include "chronsti/markov.h"

#include <cmath>
#include <sstream>

#include "chronsti/mixing.h"

namespace chronsti {

namespace {

constexpr std::size_t S = 0, I = 1, A = 2, M = 3, D = 4;

void check_row(double exit_mass, std::size_t row) {
  if (exit_mass > 1.0) {
    std::ostringstream os;
    os << "transition row " << row + 1 << " exit probability " << exit_mass
       << " exceeds 1; shorten the cycle length";
    throw ProbabilityOverflow(os.str());
  }
}

}  // namespace

void MarkovConfig::validate() const {
  if (horizon_cycles < 1) throw InvalidParameters("MarkovConfig.horizon_cycles must be >= 1");
  if (!(cycle_length > 0.0)) throw InvalidParameters("MarkovConfig.cycle_length must be > 0");
}

double cycle_probability(double yearly_probability, double cycle_length) {
  if (cycle_length == 1.0) return yearly_probability;
  return -std::expm1(cycle_length * std::log1p(-yearly_probability));
}

TransitionMatrix build_matrix_from_force(double lambda, const ParameterSet& params,
                                         double cycle_length) {
  const double p12 = rate_to_probability(lambda * cycle_length);
  const double p15 = cycle_probability(params.trans_1_5(), cycle_length);
  const double p23 = cycle_probability(params.trans_2_3(), cycle_length);
  const double p34 = cycle_probability(params.trans_3_4(), cycle_length);
  const double p45 = cycle_probability(params.trans_4_5(), cycle_length);

  check_row(p12 + p15, S);
  check_row(p23 + p15, I);
  check_row(p34 + p15, A);
  check_row(p45 + p15, M);

  TransitionMatrix P{};
  P[S][S] = 1.0 - p12 - p15;
  P[S][I] = p12;
  P[S][D] = p15;
  P[I][I] = 1.0 - p23 - p15;
  P[I][A] = p23;
  P[I][D] = p15;
  P[A][A] = 1.0 - p34 - p15;
  P[A][M] = p34;
  P[A][D] = p15;
  P[M][M] = 1.0 - p45 - p15;
  P[M][D] = p45 + p15;
  P[D][D] = 1.0;
  return P;
}

TransitionMatrix build_matrix(const CohortState& state, const ParameterSet& params,
                              Stratum stratum, Intervention intervention, double cycle_length) {
  const StratumValues lambda = forces_of_infection(state, params, intervention);
  return build_matrix_from_force(lambda[stratum.index()], params, cycle_length);
}

CohortState step(const CohortState& state, const std::array<TransitionMatrix, kNumStrata>& matrices,
                 double chi, double cycle_length) {
  CohortState next;
  next.time = state.time + cycle_length;
  for (std::size_t k = 0; k < kNumStrata; ++k) {
    const auto& n = state.counts[k];
    const auto& P = matrices[k];
    auto& out = next.counts[k];
    for (std::size_t to = 0; to < kNumStates; ++to) {
      double sum = 0.0;
      for (std::size_t from = 0; from <= to; ++from) sum += P[from][to] * n[from];
      out[to] = sum;
    }
    out[S] += chi * cycle_length * (n[S] + n[I] + n[A] + n[M]);
  }
  return next;
}

Trajectory run(const CohortState& init, const ParameterSet& params, const MarkovConfig& cfg,
               Intervention intervention) {
  cfg.validate();
  params.validate(EngineKind::Markov);

  Trajectory traj;
  traj.engine = EngineKind::Markov;
  traj.intervention = intervention;
  const auto n_points = static_cast<std::size_t>(cfg.horizon_cycles) + 1;
  traj.states.reserve(n_points);
  traj.cumulative_infections.reserve(n_points);
  traj.cumulative_morbid_entries.reserve(n_points);
  traj.states.push_back(init);
  traj.cumulative_infections.push_back({});
  traj.cumulative_morbid_entries.push_back({});

  const StratumValues frozen = forces_of_infection(init, params, intervention);
  std::array<TransitionMatrix, kNumStrata> matrices;
  for (int cycle = 0; cycle < cfg.horizon_cycles; ++cycle) {
    const CohortState& current = traj.states.back();
    const StratumValues lambda =
        cfg.static_force ? frozen : forces_of_infection(current, params, intervention);
    StratumValues infections = traj.cumulative_infections.back();
    StratumValues morbid = traj.cumulative_morbid_entries.back();
    try {
      for (std::size_t k = 0; k < kNumStrata; ++k) {
        matrices[k] = build_matrix_from_force(lambda[k], params, cfg.cycle_length);
        infections[k] += matrices[k][S][I] * current.counts[k][S];
        morbid[k] += matrices[k][A][M] * current.counts[k][A];
      }
    } catch (const ProbabilityOverflow& e) {
      throw ProbabilityOverflow(std::string(e.what()) + " (cycle " + std::to_string(cycle) + ")",
                                cycle);
    }
    traj.states.push_back(step(current, matrices, params.chi(), cfg.cycle_length));
    traj.cumulative_infections.push_back(infections);
    traj.cumulative_morbid_entries.push_back(morbid);
  }
  return traj;
}

}  // namespace chronsti
