#include "chronsti/model.h"

#include <cmath>
#include <numeric>
#include <sstream>

namespace chronsti {

namespace {

constexpr std::array<std::string_view, kNumParams> kParamNames = {
    "omega_MH", "omega_ML", "omega_FH", "omega_FL", "chi",     "beta",   "trans_2_3", "trans_3_4",
    "trans_4_5", "trans_1_5", "eta",    "sigma",    "alpha",   "gamma",  "c_screen",  "c_vac",
    "c_test",   "c_blood",  "c_treat",  "c_dis",    "c_gp",    "u_2",    "u_3",       "u_4"};

bool is_probability(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }
bool is_nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

std::string_view to_string(HealthState s) {
  switch (s) {
    case HealthState::Susceptible: return "Susceptible";
    case HealthState::Infected: return "Infected";
    case HealthState::Asymptomatic: return "Asymptomatic";
    case HealthState::Morbid: return "Morbid";
    case HealthState::Dead: return "Dead";
  }
  return "?";
}

std::string_view to_string(Sex s) { return s == Sex::Male ? "Male" : "Female"; }
std::string_view to_string(Risk r) { return r == Risk::Low ? "Low" : "High"; }

std::string_view to_string(Intervention i) {
  return i == Intervention::StatusQuo ? "StatusQuo" : "Vaccination";
}

std::string_view to_string(EngineKind e) { return e == EngineKind::Ode ? "ode" : "markov"; }

EngineKind parse_engine(std::string_view name) {
  if (name == "ode") return EngineKind::Ode;
  if (name == "markov") return EngineKind::Markov;
  throw std::invalid_argument("unknown engine '" + std::string(name) + "' (expected ode|markov)");
}

std::string_view param_name(ParamId id) { return kParamNames[static_cast<std::size_t>(id)]; }

ParamId param_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumParams; ++i)
    if (kParamNames[i] == name) return static_cast<ParamId>(i);
  throw std::invalid_argument("unknown parameter '" + std::string(name) + "'");
}

double ParameterSet::utility(HealthState s) const {
  switch (s) {
    case HealthState::Susceptible: return kUtilitySusceptible;
    case HealthState::Infected: return (*this)[ParamId::u_2];
    case HealthState::Asymptomatic: return (*this)[ParamId::u_3];
    case HealthState::Morbid: return (*this)[ParamId::u_4];
    case HealthState::Dead: return kUtilityDead;
  }
  return 0.0;
}

std::string ParameterSet::violation(EngineKind engine) const {
  auto bad = [](ParamId id, const char* why) {
    std::ostringstream os;
    os << param_name(id) << ' ' << why;
    return os.str();
  };

  for (auto id : {ParamId::omega_MH, ParamId::omega_ML, ParamId::omega_FH, ParamId::omega_FL,
                  ParamId::chi})
    if (!is_nonnegative((*this)[id])) return bad(id, "must be a nonnegative rate");

  for (auto id : {ParamId::beta, ParamId::eta, ParamId::sigma, ParamId::alpha, ParamId::gamma,
                  ParamId::u_2, ParamId::u_3, ParamId::u_4})
    if (!is_probability((*this)[id])) return bad(id, "must lie in [0,1]");

  for (std::size_t i = static_cast<std::size_t>(ParamId::c_screen);
       i <= static_cast<std::size_t>(ParamId::c_gp); ++i)
    if (!is_nonnegative(values_[i])) return bad(static_cast<ParamId>(i), "must be a nonnegative cost");

  const std::array transitions = {ParamId::trans_2_3, ParamId::trans_3_4, ParamId::trans_4_5,
                                  ParamId::trans_1_5};
  if (engine == EngineKind::Ode) {
    for (auto id : transitions)
      if (!is_nonnegative((*this)[id])) return bad(id, "must be a nonnegative rate");
    return {};
  }

  for (auto id : transitions)
    if (!is_probability((*this)[id])) return bad(id, "must be a probability in [0,1]");
  const double death = trans_1_5();
  for (auto id : {ParamId::trans_2_3, ParamId::trans_3_4, ParamId::trans_4_5})
    if ((*this)[id] + death > 1.0) return bad(id, "plus trans_1_5 exceeds 1");
  return {};
}

void ParameterSet::validate(EngineKind engine) const {
  if (auto v = violation(engine); !v.empty()) throw InvalidParameters(v);
}

double CohortState::alive(Stratum s) const {
  const auto& c = counts[s.index()];
  return c[0] + c[1] + c[2] + c[3];
}

double CohortState::total(Stratum s) const {
  const auto& c = counts[s.index()];
  return std::accumulate(c.begin(), c.end(), 0.0);
}

double CohortState::total_alive() const {
  double sum = 0.0;
  for (auto s : kAllStrata) sum += alive(s);
  return sum;
}

double CohortState::total() const {
  double sum = 0.0;
  for (auto s : kAllStrata) sum += total(s);
  return sum;
}

}  // namespace chronsti
