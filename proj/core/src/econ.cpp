#include "chronsti/econ.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chronsti {

std::vector<double> EconConfig::default_wtp_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 50000; k += 100) g.push_back(k);
  return g;
}

void EconConfig::validate() const {
  if (!(discount_rate >= 0.0)) throw InvalidParameters("discount_rate must be >= 0");
  if (wtp_grid.empty()) throw InvalidParameters("wtp grid must not be empty");
  for (std::size_t i = 1; i < wtp_grid.size(); ++i)
    if (!(wtp_grid[i] > wtp_grid[i - 1])) throw InvalidParameters("wtp grid must be strictly increasing");
  if (screening_interval < 1 || vaccination_interval < 1)
    throw InvalidParameters("screening and vaccination intervals must be >= 1");
  if (!(population_multiplier > 0.0)) throw InvalidParameters("population_multiplier must be > 0");
}

double discount_factor(double rate, int t) { return std::pow(1.0 + rate, -(t - 1)); }

Outcome accrue(const Trajectory& tr, const ParameterSet& p, const EconConfig& cfg, Intervention iv,
               CostBreakdown* breakdown) {
  using enum ParamId;
  using enum HealthState;
  const CostSchedule& sch = cfg.schedule;
  const bool sq = iv == Intervention::StatusQuo;
  const double screen_infected = p[c_gp] + p[c_test];
  const double treat = p[c_blood] + p[c_treat];
  const double symptomatic = p[c_gp] + p[c_blood] + p[c_treat];
  const bool pay_symptomatic = sq ? sch.symptomatic_diagnosis_status_quo : sch.symptomatic_diagnosis_vaccination;

  CostBreakdown cb;
  Outcome out;
  const int T = static_cast<int>(tr.size());
  for (int t = 1; t <= T; ++t) {
    const auto idx = static_cast<std::size_t>(t - 1);
    const double d = discount_factor(cfg.discount_rate, t);
    const double m = cfg.cost_multiplier ? cfg.cost_multiplier(t) : 1.0;
    const bool screen_round = (t - 1) % cfg.screening_interval == 0;
    const bool vac_round = (t - 1) % cfg.vaccination_interval == 0;
    const CohortState& st = tr.states[idx];
    for (auto s : kAllStrata) {
      const double S = st.at(s, Susceptible), I = st.at(s, Infected), A = st.at(s, Asymptomatic),
                   M = st.at(s, Morbid);
      out.qalys += d * (S * kUtilitySusceptible + I * p[u_2] + A * p[u_3] + M * p[u_4]);

      if (sq && sch.screening && screen_round) {
        const double screened = p.sigma() * (sch.screen_undiagnosed_only ? S + I + A : S + I + A + M);
        const double infected = p.sigma() * (I + A);
        cb.screening += d * m * (screened * p[c_screen] + infected * screen_infected + p.eta() * infected * treat);
      }
      if (!sq && sch.vaccination && vac_round) cb.vaccination += d * m * p.alpha() * S * p[c_vac];

      double entries = 0.0;
      if (idx > 0 && idx < tr.cumulative_morbid_entries.size())
        entries = tr.cumulative_morbid_entries[idx][s.index()] - tr.cumulative_morbid_entries[idx - 1][s.index()];
      cb.disease += d * m * p[c_dis] * (sch.disease_per_cycle ? M : entries);
      if (pay_symptomatic) cb.symptomatic += d * m * symptomatic * entries;
    }
  }
  out.cost = cb.total();
  if (breakdown) *breakdown = cb;
  return out;
}

PsaDraw evaluate(const Trajectory& status_quo, const Trajectory& vaccination, const ParameterSet& params,
                 const EconConfig& cfg) {
  const Outcome a = accrue(status_quo, params, cfg, Intervention::StatusQuo);
  const Outcome b = accrue(vaccination, params, cfg, Intervention::Vaccination);
  return {a.cost, b.cost, a.qalys, b.qalys};
}

double icer(std::span<const PsaDraw> draws) {
  if (draws.empty()) throw UndefinedICER("ICER needs at least one draw");
  double dc = 0.0, de = 0.0;
  for (const auto& d : draws) {
    dc += d.delta_c();
    de += d.delta_e();
  }
  if (de == 0.0) throw UndefinedICER("mean incremental effect is zero");
  return dc / de;
}

double ceac(std::span<const PsaDraw> draws, double k) {
  if (draws.empty()) throw InvalidParameters("CEAC needs at least one draw");
  std::size_t n = 0;
  for (const auto& d : draws)
    if (k * d.delta_e() - d.delta_c() > 0.0) ++n;
  return static_cast<double>(n) / static_cast<double>(draws.size());
}

std::vector<double> ceac(std::span<const PsaDraw> draws, std::span<const double> grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double k : grid) out.push_back(ceac(draws, k));
  return out;
}

double evpi(std::span<const PsaDraw> draws, double k) {
  if (draws.size() < 2) throw InvalidParameters("EVPI needs at least two draws");
  double e1 = 0.0, e2 = 0.0;
  for (const auto& d : draws) {
    e1 += k * d.u1 - d.c1;
    e2 += k * d.u2 - d.c2;
  }
  // Mean regret of the option that is best in expectation: algebraically
  // E[max NB] - max E[NB], but exactly zero under per-draw dominance.
  const bool pick2 = e2 > e1;
  double regret = 0.0;
  for (const auto& d : draws) {
    const double nb1 = k * d.u1 - d.c1;
    const double nb2 = k * d.u2 - d.c2;
    regret += std::max(nb1, nb2) - (pick2 ? nb2 : nb1);
  }
  return regret / static_cast<double>(draws.size());
}

CeaResult analyse(std::vector<PsaDraw> draws, double cohort_size, const EconConfig& cfg) {
  cfg.validate();
  if (!(cohort_size > 0.0)) throw InvalidParameters("cohort size must be > 0");
  CeaResult r;
  r.draws = std::move(draws);
  r.cohort_size = cohort_size;
  const auto n = static_cast<double>(r.draws.size());
  for (const auto& d : r.draws) {
    r.mean_delta_c += d.delta_c() / n;
    r.mean_delta_e += d.delta_e() / n;
  }
  try {
    r.icer = icer(r.draws);
    r.ceac_at_icer = ceac(r.draws, r.icer);
  } catch (const UndefinedICER&) {
    r.icer = std::numeric_limits<double>::quiet_NaN();
    r.ceac_at_icer = std::numeric_limits<double>::quiet_NaN();
  }
  r.wtp_grid = cfg.wtp_grid;
  r.ceac_curve = ceac(r.draws, r.wtp_grid);

  auto summary = [&](double k) {
    EvpiSummary s;
    if (r.draws.size() < 2) return s;
    s.cohort = evpi(r.draws, k);
    s.per_person = s.cohort / cohort_size;
    s.population = s.per_person * cfg.population_multiplier;
    return s;
  };
  for (double k : r.wtp_grid) {
    r.evpi_curve.push_back(summary(k));
    if (r.evpi_curve.back().cohort > r.evpi_peak.cohort || r.evpi_curve.size() == 1) {
      r.evpi_peak = r.evpi_curve.back();
      r.evpi_peak_wtp = k;
    }
  }
  r.evpi_reference = summary(cfg.wtp_reference);
  return r;
}

}  // namespace chronsti
