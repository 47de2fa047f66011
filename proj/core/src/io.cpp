#include "chronsti/io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace chronsti {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
  out << '\n';
}

std::vector<std::string> param_header(std::vector<std::string> prefix) {
  for (std::size_t k = 0; k < kNumParams; ++k) prefix.emplace_back(param_name(static_cast<ParamId>(k)));
  return prefix;
}

Sex parse_sex(const std::string& s) {
  if (s == "Male") return Sex::Male;
  if (s == "Female") return Sex::Female;
  throw DataError("unknown sex '" + s + "'");
}

Risk parse_risk(const std::string& s) {
  if (s == "High") return Risk::High;
  if (s == "Low") return Risk::Low;
  throw DataError("unknown risk group '" + s + "'");
}

HealthState parse_state(const std::string& s) {
  for (std::size_t h = 0; h < kNumStates; ++h)
    if (to_string(static_cast<HealthState>(h)) == s) return static_cast<HealthState>(h);
  throw DataError("unknown health state '" + s + "'");
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw DataError("missing column '" + name + "'");
}

double CsvTable::number(std::size_t row, std::size_t col) const {
  const std::string& s = rows.at(row).at(col);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DataError("row " + std::to_string(row + 2) + ", column '" + header.at(col) + "': not a number: '" + s + "'");
}

std::int64_t CsvTable::integer(std::size_t row, std::size_t col) const {
  const std::string& s = rows.at(row).at(col);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DataError("row " + std::to_string(row + 2) + ", column '" + header.at(col) + "': not an integer: '" + s + "'");
  return v;
}

CsvTable read_csv(std::istream& in, const std::string& source) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw DataError(source + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size())
      throw DataError(source + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
                      " fields, got " + std::to_string(cells.size()));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return read_csv(in, path);
}

void require_header(const CsvTable& t, const std::vector<std::string>& expected, const std::string& source) {
  if (t.header == expected) return;
  std::string want;
  for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
  throw DataError(source + ": header must be '" + want + "'");
}

void write_registry_csv(std::ostream& out, const EvidenceData& data) {
  out << "sex,risk,partners\n";
  for (auto s : kAllStrata)
    for (auto c : data.partner_counts[s.index()])
      out << to_string(s.sex) << ',' << to_string(s.risk) << ',' << c << '\n';
}

void write_binomial_csv(std::ostream& out, const EvidenceData& data) {
  out << "parameter,events,trials\n";
  for (const auto& [id, bc] : data.binomial) out << param_name(id) << ',' << bc.events << ',' << bc.trials << '\n';
}

void write_calibration_csv(std::ostream& out, const CalibrationSeries& series) {
  out << "year,sex,state,count\n";
  for (int year = 1; year <= kCalibrationYears; ++year)
    for (auto sex : {Sex::Male, Sex::Female})
      for (std::size_t h = 0; h < kNumAliveStates; ++h) {
        const auto state = static_cast<HealthState>(h);
        out << year << ',' << to_string(sex) << ',' << to_string(state) << ','
            << format_number(series.at(year, sex, state)) << '\n';
      }
}

void read_registry_csv(std::istream& in, EvidenceData& data) {
  const CsvTable t = read_csv(in, "registry.csv");
  require_header(t, {"sex", "risk", "partners"}, "registry.csv");
  for (auto& v : data.partner_counts) v.clear();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const Stratum s{parse_sex(t.rows[r][0]), parse_risk(t.rows[r][1])};
    const auto c = t.integer(r, 2);
    if (c < 0) throw DataError("registry.csv: negative partner count");
    data.partner_counts[s.index()].push_back(c);
  }
}

void read_binomial_csv(std::istream& in, EvidenceData& data) {
  const CsvTable t = read_csv(in, "binomial.csv");
  require_header(t, {"parameter", "events", "trials"}, "binomial.csv");
  data.binomial.clear();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    ParamId id;
    try {
      id = param_from_name(t.rows[r][0]);
    } catch (const std::exception&) {
      throw DataError("binomial.csv: unknown parameter '" + t.rows[r][0] + "'");
    }
    const BinomialCount bc{t.integer(r, 1), t.integer(r, 2)};
    if (bc.events < 0 || bc.events > bc.trials) throw DataError("binomial.csv: events must lie in [0, trials]");
    data.binomial[id] = bc;
  }
}

CalibrationSeries read_calibration_csv(std::istream& in) {
  const CsvTable t = read_csv(in, "calibration.csv");
  require_header(t, {"year", "sex", "state", "count"}, "calibration.csv");
  const std::size_t expected = static_cast<std::size_t>(kCalibrationYears) * 2 * kNumAliveStates;
  if (t.rows.size() != expected)
    throw DataError("calibration.csv: expected " + std::to_string(expected) + " rows");
  CalibrationSeries s;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto year = t.integer(r, 0);
    if (year < 1 || year > kCalibrationYears) throw DataError("calibration.csv: year out of range");
    const HealthState h = parse_state(t.rows[r][2]);
    if (h == HealthState::Dead) throw DataError("calibration.csv: Dead is not observed");
    const double c = t.number(r, 3);
    if (!(c >= 0.0)) throw DataError("calibration.csv: counts must be nonnegative");
    s.at(static_cast<int>(year), parse_sex(t.rows[r][1]), h) = c;
  }
  return s;
}

void write_trajectory_header(std::ostream& out) { out << "engine,intervention,time,sex,risk,state,count\n"; }

void write_trajectory_rows(std::ostream& out, const Trajectory& tr) {
  for (const auto& st : tr.states)
    for (auto s : kAllStrata)
      for (std::size_t h = 0; h < kNumStates; ++h)
        out << to_string(tr.engine) << ',' << to_string(tr.intervention) << ',' << format_number(st.time) << ','
            << to_string(s.sex) << ',' << to_string(s.risk) << ',' << to_string(static_cast<HealthState>(h)) << ','
            << format_number(st.counts[s.index()][h]) << '\n';
}

void write_draws_csv(std::ostream& out, const PosteriorDraws& draws) {
  write_row(out, param_header({"chain", "iteration"}));
  for (std::size_t i = 0; i < draws.draws.size(); ++i) {
    std::vector<std::string> row{std::to_string(i / static_cast<std::size_t>(draws.n_keep)),
                                 std::to_string(i % static_cast<std::size_t>(draws.n_keep))};
    for (double v : draws.draws[i].values()) row.push_back(format_number(v));
    write_row(out, row);
  }
}

std::vector<ParameterSet> read_draws_csv(std::istream& in) {
  const CsvTable t = read_csv(in, "draws csv");
  require_header(t, param_header({"chain", "iteration"}), "draws csv");
  std::vector<ParameterSet> out(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    for (std::size_t k = 0; k < kNumParams; ++k) out[r][static_cast<ParamId>(k)] = t.number(r, k + 2);
  return out;
}

void write_psa_csv(std::ostream& out, const std::vector<PsaDraw>& draws) {
  out << "draw,C1,C2,U1,U2\n";
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const auto& d = draws[i];
    out << i << ',' << format_number(d.c1) << ',' << format_number(d.c2) << ',' << format_number(d.u1) << ','
        << format_number(d.u2) << '\n';
  }
}

std::vector<PsaDraw> read_psa_csv(std::istream& in) {
  const CsvTable t = read_csv(in, "psa csv");
  require_header(t, {"draw", "C1", "C2", "U1", "U2"}, "psa csv");
  std::vector<PsaDraw> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    out.push_back({t.number(r, 1), t.number(r, 2), t.number(r, 3), t.number(r, 4)});
  return out;
}

void write_ce_plane_csv(std::ostream& out, const CeaResult& r) {
  out << "draw,delta_e,delta_c\n";
  for (std::size_t i = 0; i < r.draws.size(); ++i)
    out << i << ',' << format_number(r.draws[i].delta_e()) << ',' << format_number(r.draws[i].delta_c()) << '\n';
}

void write_ceac_csv(std::ostream& out, const CeaResult& r) {
  out << "wtp,probability\n";
  for (std::size_t i = 0; i < r.wtp_grid.size(); ++i)
    out << format_number(r.wtp_grid[i]) << ',' << format_number(r.ceac_curve[i]) << '\n';
}

void write_evpi_csv(std::ostream& out, const CeaResult& r) {
  out << "wtp,evpi_per_person,evpi_population\n";
  for (std::size_t i = 0; i < r.wtp_grid.size(); ++i)
    out << format_number(r.wtp_grid[i]) << ',' << format_number(r.evpi_curve[i].per_person) << ','
        << format_number(r.evpi_curve[i].population) << '\n';
}

void write_calibration_run_csv(std::ostream& out, const CalibrationRun& run) {
  auto header = param_header({"sample"});
  header.emplace_back("Q");
  write_row(out, header);
  for (std::size_t i = 0; i < run.samples.size(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (double v : run.samples[i].values()) row.push_back(format_number(v));
    row.push_back(format_number(run.scores[i]));
    write_row(out, row);
  }
}

void write_best_set_csv(std::ostream& out, const CalibrationRun& run) {
  out << "parameter,best,lower,upper\n";
  for (std::size_t k = 0; k < kNumParams; ++k) {
    const auto id = static_cast<ParamId>(k);
    out << param_name(id) << ',' << format_number(run.best_set[id]) << ',' << format_number(run.lower_set[id]) << ','
        << format_number(run.upper_set[id]) << '\n';
  }
  out << "Q," << format_number(run.scores[run.best_index]) << ',' << format_number(run.scores[run.lower_index])
      << ',' << format_number(run.scores[run.upper_index]) << '\n';
}

void write_diagnostics_csv(std::ostream& out, const PosteriorDraws& draws) {
  out << "parameter,role,mean,rhat";
  for (int c = 0; c < draws.n_chains; ++c) out << ",acceptance_chain" << c;
  out << '\n';
  for (std::size_t k = 0; k < kNumParams; ++k) {
    const auto id = static_cast<ParamId>(k);
    out << param_name(id) << ',' << to_string(draws.roles[k]) << ',' << format_number(draws.posterior_mean(id)) << ','
        << format_number(draws.rhat[k]);
    for (const auto& cs : draws.chain_stats) out << ',' << format_number(cs.acceptance_rate[k]);
    out << '\n';
  }
}

}  // namespace chronsti
