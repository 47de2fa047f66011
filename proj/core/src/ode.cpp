#include "chronsti/ode.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chronsti/mixing.h"

namespace chronsti {

namespace {

constexpr double kNegativeTolerance = -1e-9;

// counts (20) + cumulative infections (4) + cumulative morbid entries (4)
constexpr std::size_t kCountSlots = kNumStrata * kNumStates;
constexpr std::size_t kVectorSize = kCountSlots + 2 * kNumStrata;
using OdeVector = std::array<double, kVectorSize>;

OdeVector pack(const CohortState& s, const StratumValues& infections,
               const StratumValues& morbid) {
  OdeVector v{};
  for (std::size_t k = 0; k < kNumStrata; ++k) {
    for (std::size_t h = 0; h < kNumStates; ++h) v[k * kNumStates + h] = s.counts[k][h];
    v[kCountSlots + k] = infections[k];
    v[kCountSlots + kNumStrata + k] = morbid[k];
  }
  return v;
}

CohortState unpack_state(const OdeVector& v, double time) {
  CohortState s;
  s.time = time;
  for (std::size_t k = 0; k < kNumStrata; ++k)
    for (std::size_t h = 0; h < kNumStates; ++h) s.counts[k][h] = v[k * kNumStates + h];
  return s;
}

void unpack_flows(const OdeVector& v, StratumValues& infections, StratumValues& morbid) {
  for (std::size_t k = 0; k < kNumStrata; ++k) {
    infections[k] = v[kCountSlots + k];
    morbid[k] = v[kCountSlots + kNumStrata + k];
  }
}

OdeVector rhs(const OdeVector& v, const ParameterSet& params, Intervention intervention) {
  const StateDerivative d = derivatives(unpack_state(v, 0.0), params, intervention);
  return pack(CohortState{d.counts, 0.0}, d.incidence, d.morbid_entries);
}

void axpy(OdeVector& out, const OdeVector& x, double a, const OdeVector& y) {
  for (std::size_t i = 0; i < kVectorSize; ++i) out[i] = x[i] + a * y[i];
}

OdeVector rk4_step(const OdeVector& y, double h, const ParameterSet& params,
                   Intervention intervention) {
  OdeVector tmp;
  const OdeVector k1 = rhs(y, params, intervention);
  axpy(tmp, y, 0.5 * h, k1);
  const OdeVector k2 = rhs(tmp, params, intervention);
  axpy(tmp, y, 0.5 * h, k2);
  const OdeVector k3 = rhs(tmp, params, intervention);
  axpy(tmp, y, h, k3);
  const OdeVector k4 = rhs(tmp, params, intervention);
  OdeVector out;
  for (std::size_t i = 0; i < kVectorSize; ++i)
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

void clamp_counts(OdeVector& v, double time) {
  for (std::size_t i = 0; i < kCountSlots; ++i) {
    if (v[i] >= 0.0) continue;
    if (v[i] < kNegativeTolerance) {
      std::ostringstream os;
      os << "compartment " << i << " reached " << v[i] << " at t=" << time
         << "; reduce the solver step";
      throw NegativeState(os.str());
    }
    v[i] = 0.0;
  }
}

long checked_ratio(double num, double den, const char* what) {
  const double r = num / den;
  const double rounded = std::round(r);
  if (rounded < 1.0 || std::abs(r - rounded) > 1e-6 * rounded) {
    std::ostringstream os;
    os << what << " must be an integer multiple (got ratio " << r << ")";
    throw InvalidParameters(os.str());
  }
  return static_cast<long>(rounded);
}

}  // namespace

void OdeConfig::validate() const {
  if (!(solver_step > 0.0 && solver_step <= report_interval && report_interval <= horizon))
    throw InvalidParameters("OdeConfig requires 0 < solver_step <= report_interval <= horizon");
  checked_ratio(report_interval, solver_step, "report_interval / solver_step");
  checked_ratio(horizon, report_interval, "horizon / report_interval");
}

StateDerivative derivatives(const CohortState& state, const ParameterSet& params,
                            Intervention intervention) {
  const StratumValues lambda = forces_of_infection(state, params, intervention);
  const double chi = params.chi();
  const double r23 = params.trans_2_3();
  const double r34 = params.trans_3_4();
  const double r45 = params.trans_4_5();
  const double r15 = params.trans_1_5();

  StateDerivative d;
  for (std::size_t k = 0; k < kNumStrata; ++k) {
    const auto& n = state.counts[k];
    const double alive = n[0] + n[1] + n[2] + n[3];
    const double infections = lambda[k] * n[0];
    const double to_morbid = r34 * n[2];
    auto& dn = d.counts[k];
    dn[0] = chi * alive - infections - r15 * n[0];
    dn[1] = infections - r23 * n[1] - r15 * n[1];
    dn[2] = r23 * n[1] - to_morbid - r15 * n[2];
    dn[3] = to_morbid - r45 * n[3] - r15 * n[3];
    dn[4] = r15 * alive + r45 * n[3];
    d.incidence[k] = infections;
    d.morbid_entries[k] = to_morbid;
  }
  return d;
}

OdeSolution integrate(const CohortState& init, const ParameterSet& params, const OdeConfig& cfg,
                      Intervention intervention) {
  cfg.validate();
  params.validate(EngineKind::Ode);
  for (const auto& stratum : init.counts)
    for (double c : stratum)
      if (!(c >= 0.0)) throw InvalidParameters("initial counts must be nonnegative");

  const long steps_per_report = checked_ratio(cfg.report_interval, cfg.solver_step, "report/step");
  const long reports = checked_ratio(cfg.horizon, cfg.report_interval, "horizon/report");
  const double h = cfg.report_interval / static_cast<double>(steps_per_report);

  OdeSolution sol;
  Trajectory& traj = sol.trajectory;
  traj.engine = EngineKind::Ode;
  traj.intervention = intervention;
  traj.states.reserve(static_cast<std::size_t>(reports) + 1);
  traj.cumulative_infections.reserve(static_cast<std::size_t>(reports) + 1);
  traj.cumulative_morbid_entries.reserve(static_cast<std::size_t>(reports) + 1);

  OdeVector y = pack(init, {}, {});
  auto record = [&](double time) {
    traj.states.push_back(unpack_state(y, time));
    StratumValues inf, mor;
    unpack_flows(y, inf, mor);
    traj.cumulative_infections.push_back(inf);
    traj.cumulative_morbid_entries.push_back(mor);
  };
  record(init.time);

  for (long r = 0; r < reports; ++r) {
    const double t0 = init.time + static_cast<double>(r) * cfg.report_interval;
    if (cfg.estimate_truncation) {
      const OdeVector full = rk4_step(y, h, params, intervention);
      const OdeVector half = rk4_step(rk4_step(y, 0.5 * h, params, intervention), 0.5 * h,
                                      params, intervention);
      for (std::size_t i = 0; i < kCountSlots; ++i)
        sol.max_truncation_estimate =
            std::max(sol.max_truncation_estimate, std::abs(full[i] - half[i]) / 15.0);
    }
    for (long s = 0; s < steps_per_report; ++s) {
      y = rk4_step(y, h, params, intervention);
      clamp_counts(y, t0 + static_cast<double>(s + 1) * h);
      ++sol.steps;
    }
    record(init.time + static_cast<double>(r + 1) * cfg.report_interval);
  }
  return sol;
}

}  // namespace chronsti
