#include "chronsti/bayes.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "chronsti/case_study.h"
#include "chronsti/parallel.h"

namespace chronsti {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxInitAttempts = 1000;

double transformed_sd(const Distribution& d, Transform t) {
  const double m = mean(d);
  const double sd = std::sqrt(variance(d));
  if (t == Transform::Log) return sd / m;
  return sd / (m * (1.0 - m));
}

ParameterSet draw_initial(const Posterior& post, Rng& rng) {
  ParameterSet theta;
  for (const auto& s : post.priors()) {
    const Distribution d = post.uses_likelihood() ? evidence_posterior(s, post.data()) : s.prior;
    theta[s.id] = sample(d, rng);
  }
  return theta;
}

struct ChainResult {
  std::vector<ParameterSet> kept;
  ChainStats stats;
};

ChainResult run_chain(const MCMCConfig& cfg, const Posterior& post, int chain) {
  Rng rng = make_rng(cfg.seed, 1000 + static_cast<std::uint64_t>(chain));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const PriorSet& priors = post.priors();

  // Exact-draw distributions for non-calibrated parameters.
  std::vector<std::pair<ParamId, Distribution>> direct;
  std::vector<const PriorSpec*> calibrated;
  for (const auto& s : priors) {
    if (s.role == ParamRole::Calibrated) {
      calibrated.push_back(&s);
    } else {
      const bool use_data = post.uses_likelihood() && s.role == ParamRole::ConjugateUpdated;
      direct.emplace_back(s.id, use_data ? evidence_posterior(s, post.data()) : s.prior);
    }
  }

  ParameterSet theta;
  double lp = kNegInf;
  for (int attempt = 0; attempt < kMaxInitAttempts && lp == kNegInf; ++attempt) {
    theta = draw_initial(post, rng);
    lp = post.log_conditional(theta);
  }
  if (lp == kNegInf) throw Error("could not find an initial state with finite posterior density");

  const std::size_t nc = calibrated.size();
  std::vector<double> z(nc), scale(nc), jac(nc);
  std::vector<int> accepted(nc, 0);
  for (std::size_t j = 0; j < nc; ++j) {
    const auto& s = *calibrated[j];
    z[j] = to_unconstrained(s.transform, theta[s.id]);
    jac[j] = log_jacobian(s.transform, z[j]);
    const double user = cfg.initial_scales[static_cast<std::size_t>(s.id)];
    const Distribution d = post.uses_likelihood() ? evidence_posterior(s, post.data()) : s.prior;
    scale[j] = user > 0.0 ? user : 0.5 * transformed_sd(d, s.transform);
  }

  ChainResult result;
  result.kept.reserve(static_cast<std::size_t>(cfg.n_keep));
  const int total = cfg.burn_in + cfg.n_keep;
  for (int sweep = 0; sweep < total; ++sweep) {
    for (const auto& [id, dist] : direct) theta[id] = sample(dist, rng);

    for (std::size_t j = 0; j < nc; ++j) {
      const auto& s = *calibrated[j];
      const double z_new = z[j] + scale[j] * normal(rng);
      ParameterSet proposal = theta;
      proposal[s.id] = from_unconstrained(s.transform, z_new);
      const double lp_new = post.log_conditional(proposal);
      const double jac_new = log_jacobian(s.transform, z_new);
      const double log_ratio = (lp_new + jac_new) - (lp + jac[j]);
      if (lp_new != kNegInf && std::log(uniform(rng)) < log_ratio) {
        theta = proposal;
        z[j] = z_new;
        jac[j] = jac_new;
        lp = lp_new;
        ++accepted[j];
      }
    }

    if (sweep < cfg.burn_in) {
      if ((sweep + 1) % cfg.adaptation_window == 0) {
        for (std::size_t j = 0; j < nc; ++j) {
          const double rate = static_cast<double>(accepted[j]) / cfg.adaptation_window;
          scale[j] *= std::exp(2.0 * (rate - cfg.target_acceptance));
          accepted[j] = 0;
        }
      }
      if (sweep + 1 == cfg.burn_in) std::fill(accepted.begin(), accepted.end(), 0);
    } else {
      result.kept.push_back(theta);
    }
  }

  for (std::size_t j = 0; j < nc; ++j) {
    const auto k = static_cast<std::size_t>(calibrated[j]->id);
    result.stats.acceptance_rate[k] =
        cfg.n_keep > 0 ? static_cast<double>(accepted[j]) / cfg.n_keep : 0.0;
    result.stats.final_scale[k] = scale[j];
  }
  return result;
}

}  // namespace

ModelSetup ModelSetup::case_study() {
  ModelSetup s;
  s.initial = case_study_initial_state();
  return s;
}

Posterior::Posterior(EvidenceData data, EngineKind engine, ModelSetup setup, bool use_likelihood)
    : Posterior(std::move(data), engine, std::move(setup), default_priors(engine), use_likelihood) {}

Posterior::Posterior(EvidenceData data, EngineKind engine, ModelSetup setup, PriorSet priors,
                     bool use_likelihood)
    : data_(std::move(data)),
      engine_(engine),
      setup_(std::move(setup)),
      priors_(priors),
      use_likelihood_(use_likelihood) {
  data_.validate();
}

CalibrationSeries Posterior::model_series(const ParameterSet& theta) const {
  if (engine_ == EngineKind::Ode) {
    OdeConfig cfg = setup_.ode;
    cfg.horizon = static_cast<double>(kCalibrationYears - 1);
    cfg.report_interval = 1.0;
    cfg.estimate_truncation = false;
    return calibration_view(integrate(setup_.initial, theta, cfg, Intervention::StatusQuo).trajectory);
  }
  MarkovConfig cfg = setup_.markov;
  cfg.cycle_length = 1.0;
  cfg.horizon_cycles = kCalibrationYears - 1;
  cfg.static_force = false;
  return calibration_view(run(setup_.initial, theta, cfg, Intervention::StatusQuo));
}

double Posterior::calibration_log_likelihood(const ParameterSet& theta) const {
  const CalibrationSeries model = model_series(theta);
  double ll = 0.0;
  for (std::size_t t = 0; t < model.counts.size(); ++t)
    for (std::size_t sex = 0; sex < 2; ++sex)
      for (std::size_t h = 0; h < kNumAliveStates; ++h) {
        const double mu = std::max(kCalibrationMeanFloor, model.counts[t][sex][h]);
        ll += poisson_log_pmf(data_.calibration.counts[t][sex][h], mu);
      }
  return ll;
}

double Posterior::log_conditional(const ParameterSet& theta) const {
  if (!theta.in_support(engine_)) return kNegInf;
  double lp = 0.0;
  for (const auto& s : priors_) {
    if (s.role != ParamRole::Calibrated) continue;
    lp += log_pdf(s.prior, theta[s.id]);
    if (use_likelihood_) lp += evidence_log_likelihood(s.id, theta[s.id], data_);
    if (!std::isfinite(lp)) return kNegInf;
  }
  if (!use_likelihood_) return lp;
  try {
    lp += calibration_log_likelihood(theta);
  } catch (const Error&) {
    return kNegInf;
  }
  return std::isfinite(lp) ? lp : kNegInf;
}

double Posterior::log_density(const ParameterSet& theta) const {
  double lp = log_conditional(theta);
  if (lp == kNegInf) return lp;
  for (const auto& s : priors_) {
    if (s.role == ParamRole::Calibrated) continue;
    lp += log_pdf(s.prior, theta[s.id]);
    if (use_likelihood_) lp += evidence_log_likelihood(s.id, theta[s.id], data_);
  }
  return std::isfinite(lp) ? lp : kNegInf;
}

double log_posterior(const ParameterSet& theta, const EvidenceData& data, EngineKind engine) {
  return Posterior(data, engine, ModelSetup::case_study()).log_density(theta);
}

void MCMCConfig::validate() const {
  if (n_chains < 1) throw InvalidParameters("MCMCConfig.n_chains must be >= 1");
  if (burn_in < 0 || n_keep < 1) throw InvalidParameters("MCMCConfig needs burn_in >= 0, n_keep >= 1");
  if (adaptation_window < 1) throw InvalidParameters("MCMCConfig.adaptation_window must be >= 1");
  if (!(target_acceptance > 0.0 && target_acceptance < 1.0))
    throw InvalidParameters("MCMCConfig.target_acceptance must lie in (0,1)");
}

std::vector<double> PosteriorDraws::chain_series(ParamId id, int chain) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_keep));
  const auto begin = static_cast<std::size_t>(chain) * static_cast<std::size_t>(n_keep);
  for (std::size_t i = 0; i < static_cast<std::size_t>(n_keep); ++i) out.push_back(draws[begin + i][id]);
  return out;
}

double PosteriorDraws::posterior_mean(ParamId id) const {
  double sum = 0.0;
  for (const auto& d : draws) sum += d[id];
  return sum / static_cast<double>(draws.size());
}

double PosteriorDraws::max_rhat() const {
  double m = 0.0;
  for (double r : rhat)
    if (std::isfinite(r)) m = std::max(m, r);
  return m;
}

bool PosteriorDraws::converged(double threshold) const {
  return std::all_of(rhat.begin(), rhat.end(),
                     [&](double r) { return std::isfinite(r) && r < threshold; });
}

PosteriorDraws sample(const MCMCConfig& cfg, const Posterior& posterior) {
  cfg.validate();
  std::vector<ChainResult> chains(static_cast<std::size_t>(cfg.n_chains));
  parallel_for(static_cast<std::size_t>(cfg.n_chains), cfg.workers, [&](std::size_t c) {
    chains[c] = run_chain(cfg, posterior, static_cast<int>(c));
  });

  PosteriorDraws out;
  out.engine = posterior.engine();
  out.n_chains = cfg.n_chains;
  out.n_keep = cfg.n_keep;
  for (auto& c : chains) {
    out.draws.insert(out.draws.end(), c.kept.begin(), c.kept.end());
    out.chain_stats.push_back(c.stats);
  }
  for (const auto& s : posterior.priors()) out.roles[static_cast<std::size_t>(s.id)] = s.role;

  for (std::size_t k = 0; k < kNumParams; ++k) {
    out.rhat[k] = std::numeric_limits<double>::quiet_NaN();
    if (cfg.n_chains < 2 || cfg.n_keep < 10) continue;
    std::vector<std::vector<double>> series;
    for (int c = 0; c < cfg.n_chains; ++c) series.push_back(out.chain_series(static_cast<ParamId>(k), c));
    try {
      out.rhat[k] = gelman_rubin(series);
    } catch (const UndefinedDiagnostic&) {
    }
  }
  return out;
}

Trajectory simulate(EngineKind engine, const ParameterSet& theta, const ModelSetup& setup,
                    Intervention intervention) {
  if (engine == EngineKind::Ode) return integrate(setup.initial, theta, setup.ode, intervention).trajectory;
  return run(setup.initial, theta, setup.markov, intervention);
}

void attach_trajectories(PosteriorDraws& draws, const ModelSetup& setup, int workers) {
  draws.trajectories.assign(draws.draws.size(), {});
  ModelSetup quiet = setup;
  quiet.ode.estimate_truncation = false;
  parallel_for(draws.draws.size(), workers, [&](std::size_t i) {
    for (auto iv : kAllInterventions)
      draws.trajectories[i][static_cast<std::size_t>(iv)] = simulate(draws.engine, draws.draws[i], quiet, iv);
  });
}

double gelman_rubin(std::span<const std::vector<double>> chains, bool split) {
  if (chains.size() < 2) throw UndefinedDiagnostic("R-hat needs at least two chains");
  const std::size_t n_full = chains.front().size();
  for (const auto& c : chains)
    if (c.size() != n_full) throw UndefinedDiagnostic("R-hat needs chains of equal length");
  if (n_full < 10) throw UndefinedDiagnostic("R-hat needs at least 10 draws per chain");

  std::vector<std::span<const double>> parts;
  for (const auto& c : chains) {
    if (split) {
      const std::size_t half = n_full / 2;
      parts.emplace_back(c.data(), half);
      parts.emplace_back(c.data() + (n_full - half), half);
    } else {
      parts.emplace_back(c.data(), n_full);
    }
  }

  const auto m = static_cast<double>(parts.size());
  const auto n = static_cast<double>(parts.front().size());
  std::vector<double> means, vars;
  for (auto p : parts) {
    const double mu = std::accumulate(p.begin(), p.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : p) ss += (x - mu) * (x - mu);
    means.push_back(mu);
    vars.push_back(ss / (n - 1.0));
  }
  const double grand = std::accumulate(means.begin(), means.end(), 0.0) / m;
  double b = 0.0;
  for (double mu : means) b += (mu - grand) * (mu - grand);
  b *= n / (m - 1.0);
  const double w = std::accumulate(vars.begin(), vars.end(), 0.0) / m;
  if (!(w > 0.0)) throw UndefinedDiagnostic("R-hat undefined: zero within-chain variance");
  const double var_plus = (n - 1.0) / n * w + b / n;
  return std::sqrt(var_plus / w);
}

}  // namespace chronsti
