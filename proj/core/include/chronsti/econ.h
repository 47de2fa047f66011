#pragma once

// Cost-effectiveness layer: discounted cost and QALY accrual over
// trajectories, ICER, CEAC and EVPI over a set of PSA draws.

#include <functional>
#include <span>
#include <vector>

#include "chronsti/model.h"

namespace chronsti {

class UndefinedICER : public Error {
 public:
  using Error::Error;
};

// Which accrual rules apply. The defaults are the minimal schedule: status
// quo screens the undiagnosed every `screening_interval` years, vaccination
// vaccinates susceptibles every `vaccination_interval` years, both pay the
// disease cost per Morbid person-year, and vaccination pays for symptomatic
// diagnosis on entry to Morbid.
struct CostSchedule {
  bool screening = true;
  bool screen_undiagnosed_only = true;  // S+I+A; otherwise every alive person
  bool vaccination = true;
  bool disease_per_cycle = true;        // otherwise c_dis once per Morbid entry
  bool symptomatic_diagnosis_vaccination = true;
  bool symptomatic_diagnosis_status_quo = false;
};

struct EconConfig {
  double discount_rate = 0.03;
  std::vector<double> wtp_grid = default_wtp_grid();
  double wtp_reference = 25000.0;
  int screening_interval = 5;
  int vaccination_interval = 5;
  double population_multiplier = 1e6;
  CostSchedule schedule;
  // Optional per-year multiplier on all unit costs; year t = 1..T.
  std::function<double(int)> cost_multiplier;

  static std::vector<double> default_wtp_grid();  // 0..50000 step 100
  void validate() const;                          // throws InvalidParameters
};

struct Outcome {
  double cost = 0.0;
  double qalys = 0.0;
};

struct CostBreakdown {
  double screening = 0.0;
  double vaccination = 0.0;
  double disease = 0.0;
  double symptomatic = 0.0;
  double total() const { return screening + vaccination + disease + symptomatic; }
};

/// Discount factor for year t (t = 1 is undiscounted).
double discount_factor(double rate, int t);

/// Accrues over years t = 1..T, where year t is trajectory snapshot t-1.
Outcome accrue(const Trajectory& trajectory, const ParameterSet& params, const EconConfig& cfg,
               Intervention intervention, CostBreakdown* breakdown = nullptr);

struct PsaDraw {
  double c1 = 0.0, c2 = 0.0, u1 = 0.0, u2 = 0.0;  // 1 = status quo, 2 = vaccination
  double delta_c() const { return c2 - c1; }
  double delta_e() const { return u2 - u1; }
};

PsaDraw evaluate(const Trajectory& status_quo, const Trajectory& vaccination,
                 const ParameterSet& params, const EconConfig& cfg);

/// Ratio of means; throws UndefinedICER when mean Δe is zero.
double icer(std::span<const PsaDraw> draws);

/// Fraction of draws with k·Δe − Δc > 0.
double ceac(std::span<const PsaDraw> draws, double k);
std::vector<double> ceac(std::span<const PsaDraw> draws, std::span<const double> grid);

/// E[max NB] − max E[NB] over the two interventions at willingness to pay k,
/// in the units of the accrued outcomes.
double evpi(std::span<const PsaDraw> draws, double k);

struct EvpiSummary {
  double cohort = 0.0;      // in accrued (cohort) units
  double per_person = 0.0;  // cohort / cohort size
  double population = 0.0;  // per_person * population multiplier
};

struct CeaResult {
  std::vector<PsaDraw> draws;
  double cohort_size = 1.0;
  double icer = 0.0;
  double mean_delta_c = 0.0;
  double mean_delta_e = 0.0;
  std::vector<double> wtp_grid;
  std::vector<double> ceac_curve;
  std::vector<EvpiSummary> evpi_curve;
  EvpiSummary evpi_reference;  // at cfg.wtp_reference
  EvpiSummary evpi_peak;       // maximum over the grid
  double evpi_peak_wtp = 0.0;
  double ceac_at_icer = 0.0;
};

/// Summaries for a set of PSA draws. cohort_size converts cohort totals to
/// per-person EVPI. ICER is NaN when mean Δe is zero.
CeaResult analyse(std::vector<PsaDraw> draws, double cohort_size, const EconConfig& cfg);

}  // namespace chronsti
