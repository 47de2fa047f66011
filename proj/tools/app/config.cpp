#include "config.h"

#include <fstream>
#include <set>

namespace chronsti::app {

namespace {

using nlohmann::json;

std::string join(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

// Field reader that rejects unknown keys and wrong types.
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError("'" + (where_.empty() ? "<root>" : where_) + "' must be an object");
  }

  template <class T>
  void get(const std::string& key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    out = convert<T>(j_.at(key), join(where_, key));
  }

  template <class T>
  T require(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ConfigError("missing required field '" + join(where_, key) + "'");
    return convert<T>(j_.at(key), join(where_, key));
  }

  const json* child(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  std::string path(const std::string& key) const { return join(where_, key); }

  void finish() const {
    for (const auto& [key, _] : j_.items())
      if (!seen_.count(key)) throw ConfigError("unknown field '" + join(where_, key) + "'");
  }

 private:
  template <class T>
  static T convert(const json& v, const std::string& where) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError("'" + where + "' must be a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError("'" + where + "' must be an integer");
      if constexpr (std::is_unsigned_v<T>)
        if (v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError("'" + where + "' must be >= 0");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError("'" + where + "' must be a number");
    } else {
      if (!v.is_string()) throw ConfigError("'" + where + "' must be a string");
    }
    return v.get<T>();
  }

  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

void check_param_name(const std::string& name, const std::string& where) {
  try {
    param_from_name(name);
  } catch (const std::exception&) {
    throw ConfigError("unknown parameter '" + name + "' in '" + where + "'");
  }
}

template <class Fn>
void wrap(Fn&& fn) {
  try {
    fn();
  } catch (const InvalidParameters& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

void ExperimentConfig::apply_globals() {
  data.seed = seed;
  mcmc.seed = seed;
  calibration.seed = seed;
  mcmc.workers = workers;
  calibration.workers = workers;
}

PriorSet ExperimentConfig::priors(EngineKind engine) const {
  PriorSet p = default_priors(engine);
  const std::string prefix = std::string(to_string(engine)) + ".";
  for (const auto& [key, dist] : prior_overrides) {
    std::string name = key;
    if (key.rfind("ode.", 0) == 0 || key.rfind("markov.", 0) == 0) {
      if (key.rfind(prefix, 0) != 0) continue;
      name = key.substr(prefix.size());
    }
    auto& spec = p[static_cast<std::size_t>(param_from_name(name))];
    spec.prior = dist;
    spec.transform = std::holds_alternative<BetaDist>(dist) ? Transform::Logit : Transform::Log;
  }
  return p;
}

nlohmann::json distribution_to_json(const Distribution& d) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, GammaDist>) return {{"distribution", "gamma"}, {"shape", x.shape}, {"rate", x.rate}};
        if constexpr (std::is_same_v<T, BetaDist>) return {{"distribution", "beta"}, {"a", x.a}, {"b", x.b}};
        if constexpr (std::is_same_v<T, LogNormalDist>)
          return {{"distribution", "lognormal"}, {"mu", x.mu}, {"sigma", x.sigma}};
      },
      d);
}

Distribution distribution_from_json(const nlohmann::json& j, const std::string& where) {
  Reader r(j, where);
  const auto kind = r.require<std::string>("distribution");
  Distribution d;
  if (kind == "gamma") {
    d = GammaDist{r.require<double>("shape"), r.require<double>("rate")};
  } else if (kind == "beta") {
    d = BetaDist{r.require<double>("a"), r.require<double>("b")};
  } else if (kind == "lognormal") {
    d = LogNormalDist{r.require<double>("mu"), r.require<double>("sigma")};
  } else {
    throw ConfigError("'" + r.path("distribution") + "' must be one of gamma, beta, lognormal");
  }
  r.finish();
  const bool ok = std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, GammaDist>) return x.shape > 0 && x.rate > 0;
        if constexpr (std::is_same_v<T, BetaDist>) return x.a > 0 && x.b > 0;
        if constexpr (std::is_same_v<T, LogNormalDist>) return x.sigma > 0;
      },
      d);
  if (!ok) throw ConfigError("'" + where + "' has non-positive distribution parameters");
  return d;
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  ExperimentConfig c;
  Reader root(j, "");
  root.get("seed", c.seed);
  root.get("workers", c.workers);
  if (c.workers < 1) throw ConfigError("'workers' must be >= 1");

  if (const json* d = root.child("data")) {
    Reader r(*d, "data");
    r.get("registry_size", c.data.popsize);
    r.get("observation_noise", c.data.observation_noise);
    if (const json* t = r.child("binomial_trials")) {
      Reader tr(*t, "data.binomial_trials");
      for (const auto& [key, _] : t->items()) {
        check_param_name(key, "data.binomial_trials");
        std::int64_t n = 0;
        tr.get(key, n);
        if (n < 0) throw ConfigError("'data.binomial_trials." + key + "' must be >= 0");
        c.data.binomial_trials[param_from_name(key)] = n;
      }
      tr.finish();
    }
    if (const json* ref = r.child("reference")) {
      Reader rr(*ref, "data.reference");
      for (const auto& [key, _] : ref->items()) {
        check_param_name(key, "data.reference");
        rr.get(key, c.data.reference[param_from_name(key)]);
      }
      rr.finish();
    }
    r.finish();
    if (c.data.popsize < 1) throw ConfigError("'data.registry_size' must be >= 1");
    wrap([&] { c.data.reference.validate(EngineKind::Ode); });
  }

  if (const json* m = root.child("model")) {
    Reader r(*m, "model");
    double horizon = c.setup.ode.horizon;
    r.get("horizon_years", horizon);
    r.get("ode_step", c.setup.ode.solver_step);
    r.get("cycle_length", c.setup.markov.cycle_length);
    r.finish();
    c.setup.ode.horizon = horizon;
    if (!(c.setup.markov.cycle_length > 0.0)) throw ConfigError("'model.cycle_length' must be > 0");
    const double cycles = horizon / c.setup.markov.cycle_length;
    if (std::abs(cycles - std::round(cycles)) > 1e-6)
      throw ConfigError("'model.horizon_years' must be a multiple of 'model.cycle_length'");
    c.setup.markov.horizon_cycles = static_cast<int>(std::lround(cycles));
    c.data.ode.solver_step = c.setup.ode.solver_step;
  }
  wrap([&] {
    c.setup.ode.validate();
    c.setup.markov.validate();
  });

  if (const json* m = root.child("mcmc")) {
    Reader r(*m, "mcmc");
    r.get("chains", c.mcmc.n_chains);
    r.get("burn_in", c.mcmc.burn_in);
    r.get("keep", c.mcmc.n_keep);
    r.get("adaptation_window", c.mcmc.adaptation_window);
    r.get("target_acceptance", c.mcmc.target_acceptance);
    r.finish();
  }
  wrap([&] { c.mcmc.validate(); });

  if (const json* m = root.child("calibration")) {
    Reader r(*m, "calibration");
    r.get("samples", c.calibration.n_samples);
    r.get("latin_hypercube", c.calibration.latin_hypercube);
    r.get("lower_quantile", c.calibration.lower_quantile);
    r.get("upper_quantile", c.calibration.upper_quantile);
    r.finish();
    if (c.calibration.n_samples < 1) throw ConfigError("'calibration.samples' must be >= 1");
    if (!(0.0 <= c.calibration.lower_quantile && c.calibration.lower_quantile <= c.calibration.upper_quantile &&
          c.calibration.upper_quantile <= 1.0))
      throw ConfigError("'calibration' quantiles must satisfy 0 <= lower <= upper <= 1");
  }

  if (const json* m = root.child("econ")) {
    Reader r(*m, "econ");
    double wtp_max = c.econ.wtp_grid.back(), wtp_step = 100.0;
    r.get("discount_rate", c.econ.discount_rate);
    r.get("wtp_max", wtp_max);
    r.get("wtp_step", wtp_step);
    r.get("wtp_reference", c.econ.wtp_reference);
    r.get("screening_interval", c.econ.screening_interval);
    r.get("vaccination_interval", c.econ.vaccination_interval);
    r.get("population_multiplier", c.econ.population_multiplier);
    if (const json* s = r.child("schedule")) {
      Reader sr(*s, "econ.schedule");
      auto& sch = c.econ.schedule;
      sr.get("screening", sch.screening);
      sr.get("screen_undiagnosed_only", sch.screen_undiagnosed_only);
      sr.get("vaccination", sch.vaccination);
      sr.get("disease_per_cycle", sch.disease_per_cycle);
      sr.get("symptomatic_diagnosis_vaccination", sch.symptomatic_diagnosis_vaccination);
      sr.get("symptomatic_diagnosis_status_quo", sch.symptomatic_diagnosis_status_quo);
      sr.finish();
    }
    r.finish();
    if (!(wtp_step > 0.0) || !(wtp_max >= 0.0)) throw ConfigError("'econ.wtp_step' must be > 0 and 'econ.wtp_max' >= 0");
    c.econ.wtp_grid.clear();
    for (long i = 0; i * wtp_step <= wtp_max * (1.0 + 1e-12); ++i) c.econ.wtp_grid.push_back(i * wtp_step);
  }
  wrap([&] { c.econ.validate(); });

  if (const json* p = root.child("priors")) {
    if (!p->is_object()) throw ConfigError("'priors' must be an object");
    for (const auto& [key, value] : p->items()) {
      std::string name = key;
      for (const char* prefix : {"ode.", "markov."})
        if (key.rfind(prefix, 0) == 0) name = key.substr(std::string(prefix).size());
      check_param_name(name, "priors");
      c.prior_overrides[key] = distribution_from_json(value, "priors." + key);
    }
  }
  root.finish();
  c.apply_globals();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(j);
}

nlohmann::json to_json(const ExperimentConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  json trials = json::object(), ref = json::object();
  for (const auto& [id, n] : c.data.binomial_trials) trials[std::string(param_name(id))] = n;
  for (std::size_t k = 0; k < kNumParams; ++k)
    ref[std::string(param_name(static_cast<ParamId>(k)))] = c.data.reference.values()[k];
  j["data"] = {{"registry_size", c.data.popsize},
               {"observation_noise", c.data.observation_noise},
               {"binomial_trials", trials},
               {"reference", ref}};
  j["model"] = {{"horizon_years", c.setup.ode.horizon},
                {"ode_step", c.setup.ode.solver_step},
                {"cycle_length", c.setup.markov.cycle_length}};
  j["mcmc"] = {{"chains", c.mcmc.n_chains},
               {"burn_in", c.mcmc.burn_in},
               {"keep", c.mcmc.n_keep},
               {"adaptation_window", c.mcmc.adaptation_window},
               {"target_acceptance", c.mcmc.target_acceptance}};
  j["calibration"] = {{"samples", c.calibration.n_samples},
                      {"latin_hypercube", c.calibration.latin_hypercube},
                      {"lower_quantile", c.calibration.lower_quantile},
                      {"upper_quantile", c.calibration.upper_quantile}};
  const auto& g = c.econ.wtp_grid;
  const auto& s = c.econ.schedule;
  j["econ"] = {{"discount_rate", c.econ.discount_rate},
               {"wtp_max", g.back()},
               {"wtp_step", g.size() > 1 ? g[1] - g[0] : 100.0},
               {"wtp_reference", c.econ.wtp_reference},
               {"screening_interval", c.econ.screening_interval},
               {"vaccination_interval", c.econ.vaccination_interval},
               {"population_multiplier", c.econ.population_multiplier},
               {"schedule",
                {{"screening", s.screening},
                 {"screen_undiagnosed_only", s.screen_undiagnosed_only},
                 {"vaccination", s.vaccination},
                 {"disease_per_cycle", s.disease_per_cycle},
                 {"symptomatic_diagnosis_vaccination", s.symptomatic_diagnosis_vaccination},
                 {"symptomatic_diagnosis_status_quo", s.symptomatic_diagnosis_status_quo}}}};
  json priors = json::object();
  for (const auto& [key, d] : c.prior_overrides) priors[key] = distribution_to_json(d);
  j["priors"] = priors;
  return j;
}

}  // namespace chronsti::app
