#include "chronsti/pipeline.h"

#include <chrono>

namespace chronsti {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

}  // namespace

BayesResult run_bayes(EngineKind engine, const EvidenceData& data, const ModelSetup& setup, const MCMCConfig& mcmc,
                      const EconConfig& econ, const std::optional<PriorSet>& priors) {
  BayesResult r;
  auto t0 = Clock::now();
  const Posterior post(data, engine, setup, priors.value_or(default_priors(engine)));
  r.draws = sample(mcmc, post);
  r.sample_seconds = since(t0);

  t0 = Clock::now();
  attach_trajectories(r.draws, setup, mcmc.workers);
  r.trajectory_seconds = since(t0);

  t0 = Clock::now();
  r.psa.reserve(r.draws.draws.size());
  for (std::size_t i = 0; i < r.draws.draws.size(); ++i)
    r.psa.push_back(evaluate(r.draws.trajectories[i][0], r.draws.trajectories[i][1], r.draws.draws[i], econ));
  r.cea = analyse(r.psa, setup.initial.total(), econ);
  r.econ_seconds = since(t0);
  return r;
}

DodeResult run_dode(const EvidenceData& data, const ModelSetup& setup, const CalibrationOptions& opts,
                    const EconConfig& econ, const std::optional<PriorSet>& priors) {
  const auto t0 = Clock::now();
  DodeResult r;
  r.run = calibrate(priors.value_or(default_priors(EngineKind::Ode)), data, setup, opts);
  ModelSetup quiet = setup;
  quiet.ode.estimate_truncation = false;
  for (auto iv : kAllInterventions)
    r.best[static_cast<std::size_t>(iv)] = simulate(EngineKind::Ode, r.run.best_set, quiet, iv);
  r.outcome = evaluate(r.best[0], r.best[1], r.run.best_set, econ);
  r.icers = scenario_quantiles(r.run, quiet, econ);
  r.seconds = since(t0);
  return r;
}

Trajectory mean_trajectory(const PosteriorDraws& draws, Intervention iv) {
  if (draws.trajectories.empty()) throw InvalidParameters("draws carry no trajectories");
  const auto i = static_cast<std::size_t>(iv);
  Trajectory out = draws.trajectories.front()[i];
  const auto n = static_cast<double>(draws.trajectories.size());
  for (auto& st : out.states) st.counts = {};
  for (auto& v : out.cumulative_infections) v = {};
  for (auto& v : out.cumulative_morbid_entries) v = {};
  for (const auto& pair : draws.trajectories) {
    const Trajectory& tr = pair[i];
    for (std::size_t t = 0; t < out.size(); ++t) {
      for (std::size_t s = 0; s < kNumStrata; ++s) {
        for (std::size_t h = 0; h < kNumStates; ++h) out.states[t].counts[s][h] += tr.states[t].counts[s][h] / n;
        out.cumulative_infections[t][s] += tr.cumulative_infections[t][s] / n;
        out.cumulative_morbid_entries[t][s] += tr.cumulative_morbid_entries[t][s] / n;
      }
    }
  }
  return out;
}

}  // namespace chronsti
