#include "commands.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "chronsti/io.h"
#include "chronsti/pipeline.h"
#include "chronsti/svg.h"

namespace chronsti::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

// Error raised inside a named stage.
struct StageError {
  std::string stage;
  std::exception_ptr error;
};

class Run {
 public:
  Run(const CommandOptions& opts, std::ostream& log) : opts_(opts), log_(log) {}

  ExperimentConfig config;

  template <class Fn>
  auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
    const auto t0 = std::chrono::steady_clock::now();
    log_ << "[" << name << "] ..." << std::endl;
    try {
      if constexpr (std::is_void_v<decltype(fn())>) {
        fn();
        record(name, t0);
      } else {
        auto r = fn();
        record(name, t0);
        return r;
      }
    } catch (...) {
      throw StageError{name, std::current_exception()};
    }
  }

  void warn(const std::string& kind, const std::string& message) {
    log_ << "warning: " << kind << ": " << message << std::endl;
    warnings_.push_back({{"kind", kind}, {"message", message}});
  }

  fs::path path(const std::string& file) const { return fs::path(opts_.out_dir) / file; }

  void write(const std::string& file, const std::function<void(std::ostream&)>& fn) {
    std::ofstream out(path(file), std::ios::binary);
    if (!out) throw Error("cannot write " + path(file).string());
    fn(out);
    out.close();
    if (!out) throw Error("error writing " + path(file).string());
    outputs_.push_back(file);
  }

  void write_text(const std::string& file, const std::string& text) {
    write(file, [&](std::ostream& o) { o << text; });
  }

  void write_manifest() {
    json m;
    const json cfg = to_json(config);
    m["command"] = opts_.command;
    m["config_hash"] = hex(fnv1a(cfg.dump()));
    m["seed"] = config.seed;
    m["module_versions"] = {{"compartment-core", kVersion}, {"ode-engine", kVersion}, {"markov-engine", kVersion},
                            {"bayes", kVersion}, {"freq-calibrate", kVersion}, {"econ", kVersion},
                            {"data-sim", kVersion}, {"cli", kVersion}};
    m["stages"] = stages_;
    m["warnings"] = warnings_;
    json files = json::array();
    for (const auto& f : outputs_) {
      std::ifstream in(path(f), std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      const std::string bytes = ss.str();
      files.push_back({{"file", f}, {"bytes", bytes.size()}, {"fnv1a", hex(fnv1a(bytes))}});
    }
    m["outputs"] = files;
    m["config"] = cfg;
    std::ofstream out(path("manifest.json"));
    out << m.dump(2) << '\n';
  }

  static std::string hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

 private:
  void record(const std::string& name, std::chrono::steady_clock::time_point t0) {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    stages_.push_back({{"stage", name}, {"seconds", s}});
    log_ << "[" << name << "] done in " << s << " s" << std::endl;
  }

  const CommandOptions& opts_;
  std::ostream& log_;
  json stages_ = json::array();
  json warnings_ = json::array();
  std::vector<std::string> outputs_;
};

EvidenceData load_evidence(const std::string& dir) {
  EvidenceData d;
  auto open = [&](const char* name) {
    std::ifstream in(fs::path(dir) / name);
    if (!in) throw DataError("cannot open " + (fs::path(dir) / name).string());
    return in;
  };
  auto reg = open("registry.csv");
  read_registry_csv(reg, d);
  auto bin = open("binomial.csv");
  read_binomial_csv(bin, d);
  auto cal = open("calibration.csv");
  d.calibration = read_calibration_csv(cal);
  return d;
}

EvidenceData evidence(Run& run, const CommandOptions& opts) {
  if (opts.data_dir) return run.stage("load-data", [&] { return load_evidence(*opts.data_dir); });
  return run.stage("simulate", [&] {
    EvidenceData d = simulate_evidence(run.config.data);
    run.write("registry.csv", [&](std::ostream& o) { write_registry_csv(o, d); });
    run.write("binomial.csv", [&](std::ostream& o) { write_binomial_csv(o, d); });
    run.write("calibration.csv", [&](std::ostream& o) { write_calibration_csv(o, d.calibration); });
    return d;
  });
}

std::string model_label(EngineKind e) { return e == EngineKind::Ode ? "bode" : "bmm"; }

void write_trajectories(Run& run, const std::string& file, const std::array<Trajectory, 2>& pair) {
  run.write(file, [&](std::ostream& o) {
    write_trajectory_header(o);
    for (const auto& tr : pair) write_trajectory_rows(o, tr);
  });
}

struct CeaSeries {
  std::string label;
  const CeaResult* result;
};

void write_cea_outputs(Run& run, const std::string& suffix, const CeaResult& r) {
  run.write("ce_plane_" + suffix + ".csv", [&](std::ostream& o) { write_ce_plane_csv(o, r); });
  run.write("ceac_" + suffix + ".csv", [&](std::ostream& o) { write_ceac_csv(o, r); });
  run.write("evpi_" + suffix + ".csv", [&](std::ostream& o) { write_evpi_csv(o, r); });
  run.write("cea_summary_" + suffix + ".csv", [&](std::ostream& o) {
    o << "quantity,value\n";
    o << "draws," << r.draws.size() << '\n';
    o << "mean_delta_c," << format_number(r.mean_delta_c) << '\n';
    o << "mean_delta_e," << format_number(r.mean_delta_e) << '\n';
    o << "icer," << format_number(r.icer) << '\n';
    o << "ceac_at_icer," << format_number(r.ceac_at_icer) << '\n';
    o << "evpi_reference_per_person," << format_number(r.evpi_reference.per_person) << '\n';
    o << "evpi_reference_population," << format_number(r.evpi_reference.population) << '\n';
    o << "evpi_peak_wtp," << format_number(r.evpi_peak_wtp) << '\n';
    o << "evpi_peak_per_person," << format_number(r.evpi_peak.per_person) << '\n';
    o << "evpi_peak_population," << format_number(r.evpi_peak.population) << '\n';
  });
}

void write_cea_figures(Run& run, const std::string& suffix, const std::vector<CeaSeries>& series, double k_ref) {
  PlotSpec plane{"Cost-effectiveness plane", "Incremental QALYs (vaccination - status quo)",
                 "Incremental cost (GBP)", {}, k_ref, true};
  PlotSpec curve{"Cost-effectiveness acceptability curve", "Willingness to pay (GBP/QALY)",
                 "P(vaccination cost-effective)", {}, std::nullopt, true};
  PlotSpec value{"Population EVPI", "Willingness to pay (GBP/QALY)", "EVPI (GBP)", {}, std::nullopt, true};
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& [label, r] = series[i];
    const std::string color = kColors[i % 4];
    PlotSeries pts{label, {}, {}, color, false, true};
    for (const auto& d : r->draws) {
      pts.x.push_back(d.delta_e());
      pts.y.push_back(d.delta_c());
    }
    plane.series.push_back(pts);
    if (std::isfinite(r->icer))
      plane.series.push_back({label + " ICER", {r->mean_delta_e}, {r->mean_delta_c}, i ? "#4d0000" : "#001a33", false, true});
    curve.series.push_back({label, r->wtp_grid, r->ceac_curve, color});
    PlotSeries ev{label, r->wtp_grid, {}, color};
    for (const auto& e : r->evpi_curve) ev.y.push_back(e.population);
    value.series.push_back(ev);
  }
  run.write_text("ce_plane_" + suffix + ".svg", render_svg(plane));
  run.write_text("ceac_" + suffix + ".svg", render_svg(curve));
  run.write_text("evpi_" + suffix + ".svg", render_svg(value));
}

BayesResult fit(Run& run, EngineKind engine, const EvidenceData& data) {
  const std::string label = model_label(engine);
  BayesResult r = run.stage("fit-" + label, [&] {
    return run_bayes(engine, data, run.config.setup, run.config.mcmc, run.config.econ, run.config.priors(engine));
  });
  if (!r.draws.converged()) {
    std::string worst;
    double worst_rhat = 0.0;
    for (std::size_t k = 0; k < kNumParams; ++k)
      if (!std::isnan(r.draws.rhat[k]) && r.draws.rhat[k] > worst_rhat) {
        worst_rhat = r.draws.rhat[k];
        worst = param_name(static_cast<ParamId>(k));
      }
    run.warn("NonConvergence", worst.empty() ? label + " R-hat undefined for every parameter"
                                             : label + " max R-hat " + format_number(worst_rhat) + " (" + worst + ")");
  }
  run.stage("write-" + label, [&] {
    run.write("draws_" + label + ".csv", [&](std::ostream& o) { write_draws_csv(o, r.draws); });
    run.write("diagnostics_" + label + ".csv", [&](std::ostream& o) { write_diagnostics_csv(o, r.draws); });
    run.write("psa_" + label + ".csv", [&](std::ostream& o) { write_psa_csv(o, r.psa); });
    write_trajectories(run, "trajectories_" + label + ".csv",
                       {mean_trajectory(r.draws, Intervention::StatusQuo),
                        mean_trajectory(r.draws, Intervention::Vaccination)});
  });
  return r;
}

DodeResult calibrate_dode(Run& run, const EvidenceData& data) {
  DodeResult r = run.stage("calibrate-dode", [&] {
    return run_dode(data, run.config.setup, run.config.calibration, run.config.econ,
                    run.config.priors(EngineKind::Ode));
  });
  run.stage("write-dode", [&] {
    run.write("calibration_runs.csv", [&](std::ostream& o) { write_calibration_run_csv(o, r.run); });
    run.write("dode_best_set.csv", [&](std::ostream& o) { write_best_set_csv(o, r.run); });
    run.write("dode_scenarios.csv", [&](std::ostream& o) {
      o << "scenario,score_quantile,sample,Q,icer\n";
      o << "best,0," << r.run.best_index << ',' << format_number(r.run.scores[r.run.best_index]) << ','
        << format_number(r.icers.point) << '\n';
      o << "lower," << format_number(run.config.calibration.lower_quantile) << ',' << r.run.lower_index << ','
        << format_number(r.run.scores[r.run.lower_index]) << ',' << format_number(r.icers.lower) << '\n';
      o << "upper," << format_number(run.config.calibration.upper_quantile) << ',' << r.run.upper_index << ','
        << format_number(r.run.scores[r.run.upper_index]) << ',' << format_number(r.icers.upper) << '\n';
    });
    run.write("psa_dode.csv", [&](std::ostream& o) { write_psa_csv(o, {r.outcome}); });
    write_trajectories(run, "trajectories_dode.csv", r.best);
  });
  return r;
}

void trajectory_figures(Run& run, const std::vector<std::pair<std::string, const Trajectory*>>& models) {
  const Stratum hf{Sex::Female, Risk::High};
  for (std::size_t h = 0; h < kNumAliveStates; ++h) {
    const auto state = static_cast<HealthState>(h);
    PlotSpec p{"High-risk females: " + std::string(to_string(state)) + " (status quo)", "Year",
               "People", {}, std::nullopt, true};
    for (std::size_t m = 0; m < models.size(); ++m) {
      PlotSeries s{models[m].first, {}, {}, kColors[m % 4], m == 2};
      const Trajectory& tr = *models[m].second;
      for (std::size_t t = 0; t < tr.size(); ++t) {
        s.x.push_back(static_cast<double>(t + 1));
        s.y.push_back(tr.count(t, hf, state));
      }
      p.series.push_back(s);
    }
    std::string name(to_string(state));
    for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    run.write_text("trajectory_comparison_" + name + ".svg", render_svg(p));
  }
}

int execute(const CommandOptions& opts, Run& run) {
  const std::string& cmd = opts.command;
  if (cmd == "simulate") {
    const EvidenceData d = evidence(run, opts);
    run.stage("reference-trajectories", [&] {
      std::array<Trajectory, 2> truth;
      for (auto iv : kAllInterventions)
        truth[static_cast<std::size_t>(iv)] = simulate(EngineKind::Ode, run.config.data.reference, run.config.setup, iv);
      write_trajectories(run, "trajectories_reference.csv", truth);
    });
    (void)d;
  } else if (cmd == "calibrate-dode") {
    calibrate_dode(run, evidence(run, opts));
  } else if (cmd == "fit-bode" || cmd == "fit-bmm") {
    const EngineKind e = cmd == "fit-bode" ? EngineKind::Ode : EngineKind::Markov;
    if (opts.engine && *opts.engine != e) throw ConfigError("--engine contradicts subcommand " + cmd);
    fit(run, e, evidence(run, opts));
  } else if (cmd == "cea") {
    const EngineKind e = opts.engine.value_or(EngineKind::Markov);
    const std::string label = model_label(e);
    const std::string dir = opts.data_dir.value_or(opts.out_dir);
    const CeaResult r = run.stage("cea-" + label, [&] {
      std::ifstream in(fs::path(dir) / ("psa_" + label + ".csv"));
      if (!in) throw DataError("cannot open " + (fs::path(dir) / ("psa_" + label + ".csv")).string() +
                               " (run fit-" + label + " first)");
      return analyse(read_psa_csv(in), run.config.setup.initial.total(), run.config.econ);
    });
    run.stage("write-cea", [&] {
      write_cea_outputs(run, label, r);
      write_cea_figures(run, label, {{label == "bmm" ? "BMM" : "BODE", &r}}, run.config.econ.wtp_reference);
    });
  } else if (cmd == "compare") {
    const EvidenceData d = evidence(run, opts);
    const DodeResult dode = calibrate_dode(run, d);
    const BayesResult bmm = fit(run, EngineKind::Markov, d);
    const BayesResult bode = fit(run, EngineKind::Ode, d);
    run.stage("report", [&] {
      write_cea_outputs(run, "bmm", bmm.cea);
      write_cea_outputs(run, "bode", bode.cea);
      write_cea_figures(run, "compare", {{"BODE", &bode.cea}, {"BMM", &bmm.cea}}, run.config.econ.wtp_reference);
      const Trajectory bmm_mean = mean_trajectory(bmm.draws, Intervention::StatusQuo);
      const Trajectory bode_mean = mean_trajectory(bode.draws, Intervention::StatusQuo);
      trajectory_figures(run, {{"BODE", &bode_mean}, {"BMM", &bmm_mean}, {"dODE", &dode.best[0]}});
      run.write("icer_table.csv", [&](std::ostream& o) {
        o << "model,icer,icer_lower,icer_upper,ceac_at_icer,evpi_peak_population,evpi_reference_population\n";
        o << "dODE," << format_number(dode.icers.point) << ',' << format_number(dode.icers.lower) << ','
          << format_number(dode.icers.upper) << ",,,\n";
        for (const auto& [name, r] : {std::pair{"BODE", &bode.cea}, std::pair{"BMM", &bmm.cea}})
          o << name << ',' << format_number(r->icer) << ",,," << format_number(r->ceac_at_icer) << ','
            << format_number(r->evpi_peak.population) << ',' << format_number(r->evpi_reference.population) << '\n';
      });
      run.write("runtime.csv", [&](std::ostream& o) {
        o << "model,seconds\n";
        o << "dODE," << format_number(dode.seconds) << '\n';
        o << "BODE," << format_number(bode.seconds()) << '\n';
        o << "BMM," << format_number(bmm.seconds()) << '\n';
        o << "BMM/BODE," << format_number(bmm.seconds() / bode.seconds()) << '\n';
      });
    });
  } else {
    throw ConfigError("unknown subcommand '" + cmd + "'");
  }
  return kOk;
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int run_command(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  Run run(opts, log);
  std::string stage = "config";
  try {
    run.config = opts.config_path ? load_config(*opts.config_path) : ExperimentConfig{};
    if (opts.seed) run.config.seed = *opts.seed;
    if (opts.workers) {
      if (*opts.workers < 1) throw ConfigError("--workers must be >= 1");
      run.config.workers = *opts.workers;
    }
    run.config.apply_globals();
    fs::create_directories(opts.out_dir);
    stage = opts.command;
    try {
      execute(opts, run);
    } catch (const StageError& e) {
      stage = e.stage;
      std::rethrow_exception(e.error);
    }
    run.write_manifest();
    return kOk;
  } catch (const ConfigError& e) {
    err << stage << ": config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DataError& e) {
    err << stage << ": data error: " << e.what() << '\n';
    return kDataError;
  } catch (const InvalidParameters& e) {
    err << stage << ": invalid parameters: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << stage << ": numeric failure: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    err << stage << ": " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace chronsti::app
