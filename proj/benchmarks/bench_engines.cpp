#include <benchmark/benchmark.h>

#include "chronsti/bayes.h"
#include "chronsti/case_study.h"
#include "chronsti/data_sim.h"
#include "chronsti/econ.h"

using namespace chronsti;

namespace {

const EvidenceData& data() {
  static const EvidenceData d = simulate_evidence(SimRecipe::case_study());
  return d;
}

void BM_MarkovRun(benchmark::State& state) {
  const ParameterSet p = case_study_reference();
  MarkovConfig cfg;
  cfg.horizon_cycles = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run(case_study_initial_state(), p, cfg, Intervention::Vaccination));
}
BENCHMARK(BM_MarkovRun)->Arg(5)->Arg(100);

void BM_OdeIntegrate(benchmark::State& state) {
  const ParameterSet p = case_study_reference();
  OdeConfig cfg;
  cfg.horizon = static_cast<double>(state.range(0));
  cfg.estimate_truncation = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate(case_study_initial_state(), p, cfg, Intervention::Vaccination));
}
BENCHMARK(BM_OdeIntegrate)->Arg(4)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_LogPosterior(benchmark::State& state) {
  const auto engine = state.range(0) ? EngineKind::Ode : EngineKind::Markov;
  const Posterior post(data(), engine, ModelSetup::case_study());
  const ParameterSet p = case_study_reference();
  for (auto _ : state) benchmark::DoNotOptimize(post.log_density(p));
}
BENCHMARK(BM_LogPosterior)->ArgName("ode")->Arg(0)->Arg(1);

void BM_Accrue(benchmark::State& state) {
  const ParameterSet p = case_study_reference();
  const Trajectory tr = simulate(EngineKind::Markov, p, ModelSetup::case_study(), Intervention::StatusQuo);
  const EconConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(accrue(tr, p, cfg, Intervention::StatusQuo));
}
BENCHMARK(BM_Accrue);

}  // namespace
BENCHMARK_MAIN();
