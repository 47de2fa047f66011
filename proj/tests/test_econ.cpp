#include <gtest/gtest.h>

#include <cmath>

#include "chronsti/bayes.h"
#include "chronsti/case_study.h"
#include "chronsti/econ.h"
#include "test_util.h"

using namespace chronsti;

namespace {

constexpr Stratum kMH{Sex::Male, Risk::High};

Trajectory constant_trajectory(int snapshots, HealthState h, double n) {
  Trajectory tr;
  for (int t = 0; t < snapshots; ++t) {
    CohortState s;
    s.at(kMH, h) = n;
    s.time = t;
    tr.states.push_back(s);
    tr.cumulative_infections.push_back({});
    tr.cumulative_morbid_entries.push_back({});
  }
  return tr;
}

ParameterSet zero_costs(ParameterSet p) {
  using enum ParamId;
  for (auto id : {c_screen, c_vac, c_test, c_blood, c_treat, c_dis, c_gp}) p[id] = 0.0;
  return p;
}

std::vector<PsaDraw> draws_from(std::initializer_list<std::pair<double, double>> dcde) {
  std::vector<PsaDraw> out;
  for (auto [dc, de] : dcde) out.push_back({0.0, dc, 0.0, de});
  return out;
}

}  // namespace

TEST(Accrual, UndiscountedUtilityOfConstantCohort) {
  EconConfig cfg;
  cfg.discount_rate = 0.0;
  const Outcome o = accrue(constant_trajectory(3, HealthState::Susceptible, 100), case_study_reference(), cfg,
                           Intervention::Vaccination);
  EXPECT_DOUBLE_EQ(o.qalys, 300.0);
  const Outcome dead = accrue(constant_trajectory(3, HealthState::Dead, 100), case_study_reference(), cfg,
                              Intervention::StatusQuo);
  EXPECT_EQ(dead.qalys, 0.0);
  EXPECT_EQ(dead.cost, 0.0);
}

TEST(Accrual, DiscountFactor) {
  EXPECT_EQ(discount_factor(0.03, 1), 1.0);
  EXPECT_NEAR(100 * discount_factor(0.03, 3), 100 / (1.03 * 1.03), 1e-12);
  EXPECT_NEAR(100 * discount_factor(0.03, 3), 94.2596, 1e-4);
}

TEST(Accrual, ZeroUnitCostsGiveZeroCost) {
  const ParameterSet p = zero_costs(case_study_reference());
  const ModelSetup setup = ModelSetup::case_study();
  for (auto iv : kAllInterventions) {
    const Trajectory tr = simulate(EngineKind::Markov, p, setup, iv);
    EXPECT_EQ(accrue(tr, p, EconConfig{}, iv).cost, 0.0);
  }
}

TEST(Accrual, ScheduleHandOracle) {
  using enum ParamId;
  using enum HealthState;
  ParameterSet p = case_study_reference();
  EconConfig cfg;
  cfg.discount_rate = 0.0;
  cfg.screening_interval = 2;
  cfg.vaccination_interval = 2;
  Trajectory tr = constant_trajectory(3, Susceptible, 1000);
  for (auto& s : tr.states) {
    s.at(kMH, Infected) = 50;
    s.at(kMH, Asymptomatic) = 20;
    s.at(kMH, Morbid) = 10;
  }
  tr.cumulative_morbid_entries[1][kMH.index()] = 4;
  tr.cumulative_morbid_entries[2][kMH.index()] = 7;

  // Screening rounds in years 1 and 3; disease every year.
  const double screen_round = p.sigma() * 1070 * p[c_screen] + p.sigma() * 70 * (p[c_gp] + p[c_test]) +
                              p.eta() * p.sigma() * 70 * (p[c_blood] + p[c_treat]);
  CostBreakdown b;
  accrue(tr, p, cfg, Intervention::StatusQuo, &b);
  EXPECT_NEAR(b.screening, 2 * screen_round, 1e-9 * screen_round);
  EXPECT_NEAR(b.disease, 3 * 10 * p[c_dis], 1e-9);
  EXPECT_EQ(b.vaccination, 0.0);
  EXPECT_EQ(b.symptomatic, 0.0);

  accrue(tr, p, cfg, Intervention::Vaccination, &b);
  EXPECT_EQ(b.screening, 0.0);
  EXPECT_NEAR(b.vaccination, 2 * p.alpha() * 1000 * p[c_vac], 1e-9);
  EXPECT_NEAR(b.symptomatic, 7 * (p[c_gp] + p[c_blood] + p[c_treat]), 1e-9);

  cfg.schedule.disease_per_cycle = false;
  accrue(tr, p, cfg, Intervention::Vaccination, &b);
  EXPECT_NEAR(b.disease, 7 * p[c_dis], 1e-9);
}

TEST(Accrual, LinearInCounts) {
  const ParameterSet p = case_study_reference();
  const ModelSetup setup = ModelSetup::case_study();
  for (auto iv : kAllInterventions) {
    const Trajectory tr = simulate(EngineKind::Markov, p, setup, iv);
    Trajectory doubled = tr;
    for (auto& s : doubled.states)
      for (auto& row : s.counts)
        for (double& x : row) x *= 2;
    for (auto& row : doubled.cumulative_morbid_entries)
      for (double& x : row) x *= 2;
    const Outcome a = accrue(tr, p, EconConfig{}, iv), b = accrue(doubled, p, EconConfig{}, iv);
    EXPECT_NEAR(b.cost, 2 * a.cost, 1e-12 * a.cost);
    EXPECT_NEAR(b.qalys, 2 * a.qalys, 1e-12 * a.qalys);
  }
}

TEST(Accrual, CostMultiplierHook) {
  const ParameterSet p = case_study_reference();
  const Trajectory tr = simulate(EngineKind::Markov, p, ModelSetup::case_study(), Intervention::StatusQuo);
  EconConfig cfg;
  const double base = accrue(tr, p, cfg, Intervention::StatusQuo).cost;
  cfg.cost_multiplier = [](int) { return 1.5; };
  EXPECT_NEAR(accrue(tr, p, cfg, Intervention::StatusQuo).cost, 1.5 * base, 1e-9 * base);
}

TEST(Icer, RatioOfMeans) {
  const auto d = draws_from({{100, 0.02}, {100, 0.02}});
  EXPECT_NEAR(icer(d), 5000.0, 1e-9);
  EXPECT_EQ(icer(draws_from({{0, 0.02}, {0, 0.01}})), 0.0);
  // Ratio of means, not mean of ratios.
  EXPECT_NEAR(icer(draws_from({{100, 0.01}, {300, 0.03}})), 400 / 0.04, 1e-9);
  EXPECT_THROW(icer(draws_from({{100, 0.01}, {100, -0.01}})), UndefinedICER);
}

TEST(Ceac, Examples) {
  const auto dominant = draws_from({{-10, 0.1}, {-5, 0.2}});
  for (double k : {0.0, 1000.0, 50000.0}) EXPECT_EQ(ceac(dominant, k), 1.0);
  EXPECT_EQ(ceac(draws_from({{10, 0.1}, {5, 0.2}}), 0.0), 0.0);
}

TEST(Ceac, MonotoneAndCrossesAtMedianRatio) {
  Rng rng = make_rng(11, 0);
  std::lognormal_distribution<double> ratio(std::log(8000.0), 0.6);
  std::uniform_real_distribution<double> eff(0.01, 0.5);
  std::vector<PsaDraw> d;
  std::vector<double> ratios;
  for (int i = 0; i < 1001; ++i) {
    const double de = eff(rng), r = ratio(rng);
    d.push_back({0.0, r * de, 0.0, de});
    ratios.push_back(r);
  }
  const auto grid = EconConfig::default_wtp_grid();
  const auto curve = ceac(d, grid);
  for (std::size_t i = 1; i < curve.size(); ++i) EXPECT_GE(curve[i], curve[i - 1]);
  const auto cross = std::find_if(curve.begin(), curve.end(), [](double c) { return c >= 0.5; });
  ASSERT_NE(cross, curve.end());
  const double k_star = grid[static_cast<std::size_t>(cross - curve.begin())];
  EXPECT_LE(std::abs(k_star - testutil::quantile(ratios, 0.5)), 100.0);
}

TEST(Evpi, Examples) {
  // NB pairs (10, 0) and (0, 10) at k = 1: U1 carries NB of option 1.
  const std::vector<PsaDraw> swap{{0, 0, 10, 0}, {0, 0, 0, 10}};
  EXPECT_DOUBLE_EQ(evpi(swap, 1.0), 5.0);
  const auto dominant = draws_from({{-10, 0.1}, {-5, 0.2}, {-1, 0.05}});
  EXPECT_EQ(evpi(dominant, 25000), 0.0);
}

TEST(Evpi, NonNegativeAndZeroExactlyUnderDominance) {
  Rng rng = make_rng(12, 0);
  std::normal_distribution<double> dc(1000, 2000), de(0.1, 0.1);
  std::vector<PsaDraw> d;
  for (int i = 0; i < 500; ++i) d.push_back({0.0, dc(rng), 0.0, de(rng)});
  for (double k : EconConfig::default_wtp_grid()) {
    const double v = evpi(d, k);
    EXPECT_GE(v, 0.0);
    std::size_t wins = 0;
    for (const auto& x : d) wins += k * x.delta_e() - x.delta_c() > 0;
    EXPECT_EQ(v == 0.0, wins == 0 || wins == d.size()) << k;
  }
}

TEST(Evpi, CostScalingProperty) {
  Rng rng = make_rng(13, 0);
  std::normal_distribution<double> dc(1000, 2000), de(0.1, 0.1);
  std::vector<PsaDraw> d, scaled;
  for (int i = 0; i < 400; ++i) {
    const PsaDraw x{5000 + dc(rng), 5000 + dc(rng), 10 + de(rng), 10 + de(rng)};
    d.push_back(x);
    scaled.push_back({3 * x.c1, 3 * x.c2, x.u1, x.u2});
  }
  EXPECT_NEAR(icer(scaled), 3 * icer(d), 1e-9 * std::abs(icer(d)));
  for (double k : {1000.0, 10000.0, 25000.0}) {
    EXPECT_NEAR(evpi(scaled, 3 * k), 3 * evpi(d, k), 1e-6 * (1 + evpi(d, k)));
    EXPECT_EQ(ceac(scaled, 3 * k), ceac(d, k));
  }
}

TEST(Analyse, SummariesAndPopulationScaling) {
  std::vector<PsaDraw> d{{0, 100, 0, 0.02}, {0, 300, 0, 0.01}};
  EconConfig cfg;
  cfg.population_multiplier = 1e6;
  const CeaResult r = analyse(d, 1000.0, cfg);
  EXPECT_NEAR(r.icer, 400 / 0.03, 1e-9);
  EXPECT_EQ(r.ceac_curve.size(), r.wtp_grid.size());
  EXPECT_NEAR(r.evpi_reference.per_person, r.evpi_reference.cohort / 1000.0, 1e-12);
  EXPECT_NEAR(r.evpi_reference.population, r.evpi_reference.per_person * 1e6, 1e-6);
  for (const auto& e : r.evpi_curve) EXPECT_LE(e.cohort, r.evpi_peak.cohort);

  const CeaResult flat = analyse({{0, 1, 0, 0}, {0, 1, 0, 0}}, 1.0, cfg);
  EXPECT_TRUE(std::isnan(flat.icer));
}

TEST(EconConfig, Validation) {
  EconConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.discount_rate = -0.01;
  EXPECT_THROW(cfg.validate(), InvalidParameters);
  cfg = EconConfig{};
  cfg.wtp_grid = {0, 100, 100};
  EXPECT_THROW(cfg.validate(), InvalidParameters);
}
