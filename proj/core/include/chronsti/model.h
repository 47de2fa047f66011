#pragma once

// Shared domain model of the chronic STI cohort: health states, strata,
// interventions, parameters and cohort snapshots.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chronsti {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegeneratePopulation : public Error {
 public:
  using Error::Error;
};

class NegativeState : public Error {
 public:
  using Error::Error;
};

class ProbabilityOverflow : public Error {
 public:
  ProbabilityOverflow(const std::string& what, int cycle = -1) : Error(what), cycle_(cycle) {}
  int cycle() const { return cycle_; }

 private:
  int cycle_;
};

class InvalidParameters : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// States, strata, interventions
// ---------------------------------------------------------------------------

enum class HealthState { Susceptible = 0, Infected, Asymptomatic, Morbid, Dead };
inline constexpr std::size_t kNumStates = 5;
inline constexpr std::size_t kNumAliveStates = 4;

enum class Sex { Male = 0, Female };
enum class Risk { Low = 0, High };
inline constexpr std::size_t kNumStrata = 4;

struct Stratum {
  Sex sex;
  Risk risk;

  constexpr std::size_t index() const {
    return static_cast<std::size_t>(sex) * 2 + static_cast<std::size_t>(risk);
  }
  static constexpr Stratum from_index(std::size_t i) {
    return {static_cast<Sex>(i / 2), static_cast<Risk>(i % 2)};
  }
  friend constexpr bool operator==(Stratum, Stratum) = default;
};

inline constexpr std::array<Stratum, kNumStrata> kAllStrata = {
    Stratum{Sex::Male, Risk::Low}, Stratum{Sex::Male, Risk::High},
    Stratum{Sex::Female, Risk::Low}, Stratum{Sex::Female, Risk::High}};

constexpr Sex opposite(Sex s) { return s == Sex::Male ? Sex::Female : Sex::Male; }

enum class Intervention { StatusQuo = 0, Vaccination };
inline constexpr std::array<Intervention, 2> kAllInterventions = {Intervention::StatusQuo,
                                                                  Intervention::Vaccination};

// Which transition semantics a parameter set is read with: yearly rates for
// the ODE engine, yearly probabilities for the Markov engine.
enum class EngineKind { Ode, Markov };

std::string_view to_string(HealthState s);
std::string_view to_string(Sex s);
std::string_view to_string(Risk r);
std::string_view to_string(Intervention i);
std::string_view to_string(EngineKind e);
EngineKind parse_engine(std::string_view name);

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

enum class ParamId : std::size_t {
  omega_MH = 0,
  omega_ML,
  omega_FH,
  omega_FL,
  chi,
  beta,
  trans_2_3,
  trans_3_4,
  trans_4_5,
  trans_1_5,
  eta,
  sigma,
  alpha,
  gamma,
  c_screen,
  c_vac,
  c_test,
  c_blood,
  c_treat,
  c_dis,
  c_gp,
  u_2,
  u_3,
  u_4,
  Count
};
inline constexpr std::size_t kNumParams = static_cast<std::size_t>(ParamId::Count);

std::string_view param_name(ParamId id);
ParamId param_from_name(std::string_view name);  // throws std::invalid_argument

constexpr ParamId omega_param(Stratum s) {
  if (s.sex == Sex::Male) return s.risk == Risk::High ? ParamId::omega_MH : ParamId::omega_ML;
  return s.risk == Risk::High ? ParamId::omega_FH : ParamId::omega_FL;
}

// Utility of the Susceptible and Dead states; not sampled.
inline constexpr double kUtilitySusceptible = 1.0;
inline constexpr double kUtilityDead = 0.0;

class ParameterSet {
 public:
  ParameterSet() { values_.fill(0.0); }

  double operator[](ParamId id) const { return values_[static_cast<std::size_t>(id)]; }
  double& operator[](ParamId id) { return values_[static_cast<std::size_t>(id)]; }

  double omega(Stratum s) const { return (*this)[omega_param(s)]; }
  double chi() const { return (*this)[ParamId::chi]; }
  double beta() const { return (*this)[ParamId::beta]; }
  double trans_2_3() const { return (*this)[ParamId::trans_2_3]; }
  double trans_3_4() const { return (*this)[ParamId::trans_3_4]; }
  double trans_4_5() const { return (*this)[ParamId::trans_4_5]; }
  double trans_1_5() const { return (*this)[ParamId::trans_1_5]; }
  double eta() const { return (*this)[ParamId::eta]; }
  double sigma() const { return (*this)[ParamId::sigma]; }
  double alpha() const { return (*this)[ParamId::alpha]; }
  double gamma() const { return (*this)[ParamId::gamma]; }

  // Utility weight of a health state, u_1 = 1 and u_5 = 0.
  double utility(HealthState s) const;

  const std::array<double, kNumParams>& values() const { return values_; }
  std::array<double, kNumParams>& values() { return values_; }

  // Empty string when every invariant holds, otherwise the first violation.
  std::string violation(EngineKind engine) const;
  bool in_support(EngineKind engine) const { return violation(engine).empty(); }
  void validate(EngineKind engine) const;  // throws InvalidParameters

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;

 private:
  std::array<double, kNumParams> values_;
};

// ---------------------------------------------------------------------------
// Cohort snapshots and trajectories
// ---------------------------------------------------------------------------

using StateCounts = std::array<double, kNumStates>;
using StratumValues = std::array<double, kNumStrata>;

struct CohortState {
  std::array<StateCounts, kNumStrata> counts{};
  double time = 0.0;  // years since start of follow-up

  double& at(Stratum s, HealthState h) {
    return counts[s.index()][static_cast<std::size_t>(h)];
  }
  double at(Stratum s, HealthState h) const {
    return counts[s.index()][static_cast<std::size_t>(h)];
  }
  double alive(Stratum s) const;
  double total(Stratum s) const;
  double total_alive() const;
  double total() const;
};

// Time-indexed sequence of snapshots for one engine and intervention. The
// cumulative flow series count new infections and new Morbid entries since
// time zero and are used for incidence checks and event-driven costs.
struct Trajectory {
  EngineKind engine = EngineKind::Markov;
  Intervention intervention = Intervention::StatusQuo;
  std::vector<CohortState> states;
  std::vector<StratumValues> cumulative_infections;
  std::vector<StratumValues> cumulative_morbid_entries;

  std::size_t size() const { return states.size(); }
  double count(std::size_t index, Stratum s, HealthState h) const { return states[index].at(s, h); }
};

}  // namespace chronsti
