#include <gtest/gtest.h>

#include <sstream>

#include "chronsti/case_study.h"
#include "chronsti/data_sim.h"
#include "chronsti/io.h"

using namespace chronsti;

TEST(Csv, NumbersRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -1e-300, 0.0})
    EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(Csv, ParsesTable) {
  std::istringstream in("a,b\n1,2.5\n3,-4\n");
  const CsvTable t = read_csv(in, "mem");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.column("b"), 1u);
  EXPECT_EQ(t.number(0, 1), 2.5);
  EXPECT_EQ(t.integer(1, 0), 3);
  EXPECT_THROW(t.column("c"), DataError);
  EXPECT_THROW(t.integer(0, 1), DataError);
}

TEST(Csv, HeaderAndRowShapeErrors) {
  std::istringstream in("a,b\n1,2\n");
  const CsvTable t = read_csv(in, "mem");
  EXPECT_THROW(require_header(t, {"a", "c"}, "mem"), DataError);
  EXPECT_NO_THROW(require_header(t, {"a", "b"}, "mem"));
  std::istringstream ragged("a,b\n1\n");
  EXPECT_THROW(read_csv(ragged, "mem"), DataError);
  EXPECT_THROW(read_csv_file("/nonexistent/file.csv"), DataError);
}

TEST(Evidence, RoundTrip) {
  const EvidenceData d = simulate_evidence(SimRecipe::case_study());
  std::stringstream reg, bin, cal;
  write_registry_csv(reg, d);
  write_binomial_csv(bin, d);
  write_calibration_csv(cal, d.calibration);
  EvidenceData back;
  read_registry_csv(reg, back);
  read_binomial_csv(bin, back);
  back.calibration = read_calibration_csv(cal);
  EXPECT_EQ(back.partner_counts, d.partner_counts);
  ASSERT_EQ(back.binomial.size(), d.binomial.size());
  for (const auto& [id, c] : d.binomial) {
    EXPECT_EQ(back.binomial.at(id).events, c.events);
    EXPECT_EQ(back.binomial.at(id).trials, c.trials);
  }
  EXPECT_EQ(back.calibration.counts, d.calibration.counts);
}

TEST(Evidence, WrongHeaderIsDataError) {
  std::istringstream in("sex,risk,count\nMale,High,3\n");
  EvidenceData d;
  EXPECT_THROW(read_registry_csv(in, d), DataError);
  std::istringstream cal("year,sex,state,count\n9,Male,Infected,3\n");
  EXPECT_THROW(read_calibration_csv(cal), DataError);
}

TEST(Draws, RoundTrip) {
  PosteriorDraws d;
  d.n_chains = 1;
  d.n_keep = 2;
  ParameterSet a = case_study_reference(), b = a;
  b[ParamId::beta] = 0.123456789012345;
  d.draws = {a, b};
  std::stringstream s;
  write_draws_csv(s, d);
  EXPECT_EQ(read_draws_csv(s), d.draws);
}

TEST(Psa, RoundTrip) {
  const std::vector<PsaDraw> d{{1.5, 2.25, 3.125, 1.0 / 3}, {-1, 0, 1e9, 7}};
  std::stringstream s;
  write_psa_csv(s, d);
  const auto back = read_psa_csv(s);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].c1, d[i].c1);
    EXPECT_EQ(back[i].c2, d[i].c2);
    EXPECT_EQ(back[i].u1, d[i].u1);
    EXPECT_EQ(back[i].u2, d[i].u2);
  }
}

TEST(Trajectory, LongFormatRows) {
  Trajectory tr;
  tr.engine = EngineKind::Ode;
  tr.states.resize(2);
  std::stringstream s;
  write_trajectory_header(s);
  write_trajectory_rows(s, tr);
  const CsvTable t = read_csv(s, "mem");
  EXPECT_EQ(t.header, (std::vector<std::string>{"engine", "intervention", "time", "sex", "risk", "state", "count"}));
  EXPECT_EQ(t.rows.size(), 2u * kNumStrata * kNumStates);
}
