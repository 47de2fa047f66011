#include "chronsti/data_sim.h"

#include <random>

#include "chronsti/case_study.h"

namespace chronsti {

namespace {

enum Stream : std::uint64_t { kRegistry = 1, kBinomial = 2, kCalibration = 3 };

std::int64_t poisson_draw(double mean, Rng& rng) {
  if (!(mean > 0.0)) return 0;
  return std::poisson_distribution<std::int64_t>(mean)(rng);
}

}  // namespace

SimRecipe SimRecipe::case_study(std::uint64_t seed) {
  SimRecipe r;
  r.seed = seed;
  r.reference = case_study_reference();
  r.initial = case_study_initial_state();
  r.binomial_trials = {{ParamId::beta, 5000},
                       {ParamId::eta, 1000},
                       {ParamId::sigma, 1000},
                       {ParamId::alpha, 1000},
                       {ParamId::gamma, 1000}};
  return r;
}

std::array<std::vector<std::int64_t>, kNumStrata> simulate_registry(const SimRecipe& recipe) {
  if (recipe.popsize < 1) throw InvalidParameters("registry popsize must be >= 1");
  Rng rng = make_rng(recipe.seed, kRegistry);
  std::array<std::vector<std::int64_t>, kNumStrata> out;
  for (auto s : kAllStrata) {
    auto& counts = out[s.index()];
    counts.reserve(static_cast<std::size_t>(recipe.popsize));
    const double mean = recipe.reference.omega(s);
    for (int i = 0; i < recipe.popsize; ++i) counts.push_back(poisson_draw(mean, rng));
  }
  return out;
}

std::map<ParamId, BinomialCount> simulate_binomial(const SimRecipe& recipe) {
  Rng rng = make_rng(recipe.seed, kBinomial);
  std::map<ParamId, BinomialCount> out;
  for (const auto& [id, trials] : recipe.binomial_trials) {
    if (trials < 0) throw InvalidParameters("binomial trials must be >= 0");
    std::binomial_distribution<std::int64_t> draw(trials, recipe.reference[id]);
    out[id] = {draw(rng), trials};
  }
  return out;
}

CalibrationSeries simulate_calibration_series(const SimRecipe& recipe) {
  OdeConfig cfg = recipe.ode;
  cfg.horizon = static_cast<double>(kCalibrationYears - 1);
  cfg.report_interval = 1.0;
  const OdeSolution sol =
      integrate(recipe.initial, recipe.reference, cfg, Intervention::StatusQuo);
  CalibrationSeries series = calibration_view(sol.trajectory);
  if (!recipe.observation_noise) return series;

  Rng rng = make_rng(recipe.seed, kCalibration);
  for (auto& year : series.counts)
    for (auto& sex : year)
      for (double& c : sex) c = static_cast<double>(poisson_draw(c, rng));
  return series;
}

EvidenceData simulate_evidence(const SimRecipe& recipe) {
  EvidenceData data;
  data.partner_counts = simulate_registry(recipe);
  data.binomial = simulate_binomial(recipe);
  data.calibration = simulate_calibration_series(recipe);
  return data;
}

}  // namespace chronsti
