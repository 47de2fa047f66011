#pragma once

// CSV tables exchanged between pipeline stages. Numbers are written with
// round-trip precision so that reading a file back reproduces the values.

#include <iosfwd>
#include <string>
#include <vector>

#include "chronsti/bayes.h"
#include "chronsti/calibrate.h"
#include "chronsti/econ.h"
#include "chronsti/evidence.h"

namespace chronsti {

class DataError : public Error {
 public:
  using Error::Error;
};

std::string format_number(double x);

// Minimal CSV table: header plus rows of string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws DataError
  double number(std::size_t row, std::size_t col) const;
  std::int64_t integer(std::size_t row, std::size_t col) const;
};

CsvTable read_csv(std::istream& in, const std::string& source);
CsvTable read_csv_file(const std::string& path);
/// Throws DataError unless the header is exactly `expected`.
void require_header(const CsvTable& t, const std::vector<std::string>& expected, const std::string& source);

// Evidence: registry.csv (sex,risk,partners), binomial.csv (parameter,events,trials),
// calibration.csv (year,sex,state,count).
void write_registry_csv(std::ostream& out, const EvidenceData& data);
void write_binomial_csv(std::ostream& out, const EvidenceData& data);
void write_calibration_csv(std::ostream& out, const CalibrationSeries& series);
void read_registry_csv(std::istream& in, EvidenceData& data);
void read_binomial_csv(std::istream& in, EvidenceData& data);
CalibrationSeries read_calibration_csv(std::istream& in);

// Trajectories: engine,intervention,time,sex,risk,state,count.
void write_trajectory_header(std::ostream& out);
void write_trajectory_rows(std::ostream& out, const Trajectory& tr);

// Posterior draws: chain,iteration,<parameter names...>.
void write_draws_csv(std::ostream& out, const PosteriorDraws& draws);
std::vector<ParameterSet> read_draws_csv(std::istream& in);

// PSA outcomes: draw,C1,C2,U1,U2.
void write_psa_csv(std::ostream& out, const std::vector<PsaDraw>& draws);
std::vector<PsaDraw> read_psa_csv(std::istream& in);

// CEA summaries.
void write_ce_plane_csv(std::ostream& out, const CeaResult& r);  // draw,delta_e,delta_c
void write_ceac_csv(std::ostream& out, const CeaResult& r);      // wtp,probability
void write_evpi_csv(std::ostream& out, const CeaResult& r);      // wtp,evpi_per_person,evpi_population

// Frequentist calibration: sample,<parameter names...>,Q.
void write_calibration_run_csv(std::ostream& out, const CalibrationRun& run);
// Best/scenario report: parameter,best,lower,upper.
void write_best_set_csv(std::ostream& out, const CalibrationRun& run);

// Diagnostics: parameter,role,mean,rhat,acceptance_chain<k>...
void write_diagnostics_csv(std::ostream& out, const PosteriorDraws& draws);

}  // namespace chronsti
