#include <gtest/gtest.h>

#include <cmath>

#include "chronsti/case_study.h"
#include "chronsti/markov.h"

using namespace chronsti;

namespace {

double row_sum(const TransitionMatrix& m, std::size_t r) {
  double s = 0.0;
  for (double v : m[r]) s += v;
  return s;
}

std::array<TransitionMatrix, kNumStrata> identities() {
  TransitionMatrix id{};
  for (std::size_t i = 0; i < kNumStates; ++i) id[i][i] = 1.0;
  return {id, id, id, id};
}

}  // namespace

TEST(MarkovMatrix, NoPrevalenceNoInfection) {
  const ParameterSet p = case_study_reference();
  const TransitionMatrix m = build_matrix_from_force(0.0, p);
  EXPECT_EQ(m[0][1], 0.0);
  EXPECT_DOUBLE_EQ(m[0][0], 1.0 - p.trans_1_5());
}

TEST(MarkovMatrix, TableMeansRowTwo) {
  const ParameterSet p = case_study_reference();
  const TransitionMatrix m = build_matrix_from_force(0.01, p);
  EXPECT_EQ(m[1][0], 0.0);
  EXPECT_NEAR(m[1][1], 1.0 - 0.80 - 0.0005, 1e-15);
  EXPECT_EQ(m[1][2], 0.80);
  EXPECT_EQ(m[1][3], 0.0);
  EXPECT_EQ(m[1][4], 0.0005);
}

TEST(MarkovMatrix, StructureAndStochasticity) {
  const ParameterSet p = case_study_reference();
  const TransitionMatrix m = build_matrix(case_study_initial_state(), p, {Sex::Female, Risk::High},
                                          Intervention::StatusQuo);
  for (std::size_t r = 0; r < kNumStates; ++r) {
    EXPECT_NEAR(row_sum(m, r), 1.0, 1e-12);
    for (std::size_t c = 0; c < r; ++c) EXPECT_EQ(m[r][c], 0.0) << r << "," << c;
  }
  EXPECT_EQ(m[1][3], 0.0);  // Infected cannot skip to Morbid
  EXPECT_EQ(m[0][2], 0.0);
  EXPECT_EQ(m[4][4], 1.0);
}

TEST(MarkovMatrix, ZeroExitsGiveIdentity) {
  ParameterSet p = case_study_reference();
  p[ParamId::trans_2_3] = p[ParamId::trans_3_4] = p[ParamId::trans_4_5] = p[ParamId::trans_1_5] = 0.0;
  EXPECT_EQ(build_matrix_from_force(0.0, p), identities()[0]);
}

TEST(MarkovMatrix, OverflowDetected) {
  ParameterSet p = case_study_reference();
  p[ParamId::trans_1_5] = 0.5;
  EXPECT_THROW(build_matrix_from_force(5.0, p), ProbabilityOverflow);
}

TEST(MarkovStep, IdentityLeavesStateUnchanged) {
  const CohortState s = case_study_initial_state();
  const CohortState next = step(s, identities(), 0.0);
  EXPECT_EQ(next.counts, s.counts);
}

TEST(MarkovStep, SingleStratumOracle) {
  TransitionMatrix m{};
  for (std::size_t i = 0; i < kNumStates; ++i) m[i][i] = 1.0;
  m[0] = {1.0 - 0.1 - 0.01, 0.1, 0.0, 0.0, 0.01};
  auto ms = identities();
  ms[0] = m;
  CohortState s;
  s.counts[0] = {100, 0, 0, 0, 0};
  const CohortState next = step(s, ms, 0.0);
  const StateCounts oracle{100 * 0.89, 100 * 0.1, 0, 0, 100 * 0.01};
  for (std::size_t h = 0; h < kNumStates; ++h) EXPECT_NEAR(next.counts[0][h], oracle[h], 1e-12);
  EXPECT_NEAR(next.counts[0][0], 89, 1e-12);
}

TEST(MarkovStep, ConservationWithBirths) {
  const ParameterSet p = case_study_reference();
  const CohortState s = case_study_initial_state();
  std::array<TransitionMatrix, kNumStrata> ms;
  for (auto st : kAllStrata) ms[st.index()] = build_matrix(s, p, st, Intervention::StatusQuo);
  const CohortState next = step(s, ms, p.chi());
  EXPECT_NEAR(next.total(), s.total() + p.chi() * s.total_alive(), 1e-6);
}

TEST(MarkovRun, NoTransmission) {
  ParameterSet p = case_study_reference();
  p[ParamId::beta] = 0.0;
  const Trajectory tr = run(case_study_initial_state(), p, MarkovConfig{}, Intervention::StatusQuo);
  EXPECT_EQ(tr.size(), 101u);
  for (const auto& v : tr.cumulative_infections)
    for (double c : v) EXPECT_EQ(c, 0.0);
}

TEST(MarkovRun, OneCycleIsOneStep) {
  const ParameterSet p = case_study_reference();
  const CohortState s = case_study_initial_state();
  MarkovConfig cfg;
  cfg.horizon_cycles = 1;
  const Trajectory tr = run(s, p, cfg, Intervention::Vaccination);
  std::array<TransitionMatrix, kNumStrata> ms;
  for (auto st : kAllStrata) ms[st.index()] = build_matrix(s, p, st, Intervention::Vaccination);
  const CohortState next = step(s, ms, p.chi());
  ASSERT_EQ(tr.size(), 2u);
  EXPECT_EQ(tr.states[1].counts, next.counts);
}

TEST(MarkovRun, OverflowCarriesCycle) {
  ParameterSet p = case_study_reference();
  // Background mortality leaves less exit mass than the initial infection
  // probability needs.
  p[ParamId::trans_2_3] = p[ParamId::trans_3_4] = p[ParamId::trans_4_5] = 0.0;
  p[ParamId::trans_1_5] = 0.9995;
  try {
    run(case_study_initial_state(), p, MarkovConfig{}, Intervention::StatusQuo);
    FAIL() << "expected ProbabilityOverflow";
  } catch (const ProbabilityOverflow& e) {
    EXPECT_EQ(e.cycle(), 0);
  }
}

TEST(MarkovCycle, CycleProbability) {
  EXPECT_EQ(cycle_probability(0.8, 1.0), 0.8);
  EXPECT_NEAR(cycle_probability(0.8, 0.5), 1.0 - std::sqrt(0.2), 1e-15);
  // Twelve monthly cycles compound back to the yearly probability.
  const double m = cycle_probability(0.3, 1.0 / 12.0);
  EXPECT_NEAR(1.0 - std::pow(1.0 - m, 12), 0.3, 1e-14);
}
