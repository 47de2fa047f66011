#include "chronsti/calibrate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "chronsti/parallel.h"

namespace chronsti {

double score(const ParameterSet& theta, const CalibrationSeries& data, const ModelSetup& setup) {
  OdeConfig cfg = setup.ode;
  cfg.horizon = static_cast<double>(kCalibrationYears - 1);
  cfg.report_interval = 1.0;
  cfg.estimate_truncation = false;
  CalibrationSeries model;
  try {
    theta.validate(EngineKind::Ode);
    model = calibration_view(integrate(setup.initial, theta, cfg, Intervention::StatusQuo).trajectory);
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
  double q = 0.0;
  for (std::size_t t = 0; t < model.counts.size(); ++t)
    for (std::size_t sex = 0; sex < 2; ++sex)
      for (std::size_t h = 0; h < kNumAliveStates; ++h) {
        const double e = data.counts[t][sex][h] - model.counts[t][sex][h];
        q += e * e;
      }
  return q;
}

ParameterSet calibration_baseline(const PriorSet& priors, const EvidenceData& data) {
  ParameterSet p;
  for (const auto& s : priors) p[s.id] = mean(evidence_posterior(s, data));
  return p;
}

std::vector<std::size_t> CalibrationRun::ranking() const {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });
  return order;
}

CalibrationRun score_samples(std::vector<ParameterSet> samples, const CalibrationSeries& data,
                             const ModelSetup& setup, const CalibrationOptions& opts) {
  if (samples.empty()) throw InvalidParameters("calibration needs at least one sample");
  CalibrationRun run;
  run.samples = std::move(samples);
  run.scores.assign(run.samples.size(), 0.0);
  parallel_for(run.samples.size(), opts.workers,
               [&](std::size_t i) { run.scores[i] = score(run.samples[i], data, setup); });

  const auto order = run.ranking();
  const auto last = static_cast<double>(order.size() - 1);
  run.best_index = order.front();
  run.lower_index = order[static_cast<std::size_t>(std::lround(opts.lower_quantile * last))];
  run.upper_index = order[static_cast<std::size_t>(std::lround(opts.upper_quantile * last))];
  run.best_set = run.samples[run.best_index];
  run.lower_set = run.samples[run.lower_index];
  run.upper_set = run.samples[run.upper_index];
  return run;
}

CalibrationRun calibrate(const PriorSet& priors, const EvidenceData& data, const ModelSetup& setup,
                         const CalibrationOptions& opts) {
  if (opts.n_samples < 1) throw InvalidParameters("n_samples must be >= 1");
  if (!(opts.lower_quantile >= 0.0 && opts.lower_quantile <= opts.upper_quantile && opts.upper_quantile <= 1.0))
    throw InvalidParameters("scenario quantiles must satisfy 0 <= lower <= upper <= 1");
  const ParameterSet base = calibration_baseline(priors, data);
  const auto n = static_cast<std::size_t>(opts.n_samples);
  std::vector<ParameterSet> samples(n, base);
  Rng rng = make_rng(opts.seed, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (const auto& s : priors) {
    if (s.role != ParamRole::Calibrated) continue;
    const Distribution d = evidence_posterior(s, data);
    if (opts.latin_hypercube) {
      std::vector<std::size_t> strata(n);
      std::iota(strata.begin(), strata.end(), 0);
      std::shuffle(strata.begin(), strata.end(), rng);
      for (std::size_t i = 0; i < n; ++i) {
        const double u = (static_cast<double>(strata[i]) + unit(rng)) / static_cast<double>(n);
        samples[i][s.id] = quantile(d, std::clamp(u, 1e-12, 1.0 - 1e-12));
      }
    } else {
      for (auto& theta : samples) theta[s.id] = sample(d, rng);
    }
  }
  return score_samples(std::move(samples), data.calibration, setup, opts);
}

double deterministic_icer(const ParameterSet& theta, const ModelSetup& setup, const EconConfig& cfg) {
  const Trajectory sq = simulate(EngineKind::Ode, theta, setup, Intervention::StatusQuo);
  const Trajectory vac = simulate(EngineKind::Ode, theta, setup, Intervention::Vaccination);
  const PsaDraw d = evaluate(sq, vac, theta, cfg);
  return icer(std::span<const PsaDraw>(&d, 1));
}

ScenarioIcers scenario_quantiles(const CalibrationRun& run, const ModelSetup& setup, const EconConfig& cfg) {
  ModelSetup quiet = setup;
  quiet.ode.estimate_truncation = false;
  return {deterministic_icer(run.best_set, quiet, cfg), deterministic_icer(run.lower_set, quiet, cfg),
          deterministic_icer(run.upper_set, quiet, cfg)};
}

}  // namespace chronsti
