#include "chronsti/priors.h"

#include <cmath>
#include <limits>

namespace chronsti {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

PriorSpec spec(ParamId id, Distribution d, ParamRole role) {
  const Transform t = std::holds_alternative<BetaDist>(d) ? Transform::Logit : Transform::Log;
  return {id, d, role, t};
}

}  // namespace

std::string_view to_string(ParamRole r) {
  switch (r) {
    case ParamRole::FixedPrior: return "fixed_prior";
    case ParamRole::ConjugateUpdated: return "conjugate";
    case ParamRole::Calibrated: return "calibrated";
  }
  return "?";
}

void EvidenceData::validate() const {
  for (const auto& [id, bc] : binomial)
    if (bc.trials < 0 || bc.events < 0 || bc.events > bc.trials)
      throw InvalidParameters("binomial evidence for " + std::string(param_name(id)) +
                              " violates 0 <= r <= n");
  for (const auto& counts : partner_counts)
    for (auto c : counts)
      if (c < 0) throw InvalidParameters("partner counts must be nonnegative");
  for (const auto& year : calibration.counts)
    for (const auto& sex : year)
      for (double c : sex)
        if (!(c >= 0.0)) throw InvalidParameters("calibration counts must be nonnegative");
}

CalibrationSeries calibration_view(const Trajectory& trajectory) {
  if (trajectory.size() < static_cast<std::size_t>(kCalibrationYears))
    throw InvalidParameters("trajectory shorter than the calibration window");
  CalibrationSeries out;
  for (int year = 1; year <= kCalibrationYears; ++year)
    for (auto sex : {Sex::Male, Sex::Female})
      for (std::size_t h = 0; h < kNumAliveStates; ++h)
        out.at(year, sex, static_cast<HealthState>(h)) =
            trajectory.count(static_cast<std::size_t>(year - 1), {sex, Risk::High},
                             static_cast<HealthState>(h));
  return out;
}

PriorSet default_priors(EngineKind engine) {
  using enum ParamId;
  using R = ParamRole;
  const bool markov = engine == EngineKind::Markov;
  const GammaDist vague{0.1, 0.1};
  const BetaDist jeffreys{0.5, 0.5};

  PriorSet p = {
      spec(omega_MH, vague, R::Calibrated),
      spec(omega_ML, vague, R::Calibrated),
      spec(omega_FH, vague, R::Calibrated),
      spec(omega_FL, vague, R::Calibrated),
      markov ? spec(chi, BetaDist{1099.99, 108899.0}, R::Calibrated)
             : spec(chi, GammaDist{1111.1, 111111.1}, R::Calibrated),
      spec(beta, jeffreys, R::Calibrated),
      markov ? spec(trans_2_3, BetaDist{5119.2, 1279.8}, R::Calibrated)
             : spec(trans_2_3, GammaDist{25600.0, 32000.0}, R::Calibrated),
      markov ? spec(trans_3_4, BetaDist{1842.66, 18631.34}, R::Calibrated)
             : spec(trans_3_4, GammaDist{2025.0, 22500.0}, R::Calibrated),
      markov ? spec(trans_4_5, BetaDist{1535.96, 36863.04}, R::Calibrated)
             : spec(trans_4_5, GammaDist{1600.0, 40000.0}, R::Calibrated),
      markov ? spec(trans_1_5, BetaDist{156.171, 312186.6}, R::Calibrated)
             : spec(trans_1_5, GammaDist{156.25, 312500.0}, R::Calibrated),
      spec(eta, jeffreys, R::ConjugateUpdated),
      spec(sigma, jeffreys, R::ConjugateUpdated),
      spec(alpha, jeffreys, R::ConjugateUpdated),
      spec(gamma, jeffreys, R::ConjugateUpdated),
      spec(c_screen, LogNormalDist{2.996, 0.693}, R::FixedPrior),
      spec(c_vac, LogNormalDist{5.011, 0.01}, R::FixedPrior),
      spec(c_test, LogNormalDist{2.996, 0.03}, R::FixedPrior),
      spec(c_blood, LogNormalDist{3.401, 0.03}, R::FixedPrior),
      spec(c_treat, LogNormalDist{8.517, 0.015}, R::FixedPrior),
      spec(c_dis, LogNormalDist{9.210, 0.01}, R::FixedPrior),
      spec(c_gp, LogNormalDist{3.912, 0.02}, R::FixedPrior),
      spec(u_2, BetaDist{1469.3, 629.7}, R::FixedPrior),
      spec(u_3, BetaDist{1439.4, 959.6}, R::FixedPrior),
      spec(u_4, BetaDist{629.7, 1469.3}, R::FixedPrior),
  };
  return p;
}

Distribution evidence_posterior(const PriorSpec& spec, const EvidenceData& data) {
  for (auto s : kAllStrata)
    if (spec.id == omega_param(s)) {
      if (const auto* g = std::get_if<GammaDist>(&spec.prior))
        return conjugate_posterior_gamma(*g, data.partner_counts[s.index()]);
    }
  if (auto it = data.binomial.find(spec.id); it != data.binomial.end())
    if (const auto* b = std::get_if<BetaDist>(&spec.prior))
      return conjugate_posterior_beta(*b, it->second);
  return spec.prior;
}

double evidence_log_likelihood(ParamId id, double value, const EvidenceData& data) {
  for (auto s : kAllStrata)
    if (id == omega_param(s)) {
      const auto& counts = data.partner_counts[s.index()];
      if (counts.empty()) return 0.0;
      if (!(value > 0.0)) return kNegInf;
      // Poisson log-likelihood up to the count-only constant -sum log(x!).
      double sum = 0.0;
      for (auto x : counts) sum += static_cast<double>(x);
      return sum * std::log(value) - static_cast<double>(counts.size()) * value;
    }
  if (auto it = data.binomial.find(id); it != data.binomial.end())
    return binomial_log_pmf(it->second.events, it->second.trials, value);
  return 0.0;
}

double log_prior(const ParameterSet& theta, const PriorSet& priors) {
  double lp = 0.0;
  for (const auto& s : priors) {
    lp += log_pdf(s.prior, theta[s.id]);
    if (lp == kNegInf) return kNegInf;
  }
  return lp;
}

ParameterSet prior_means(const PriorSet& priors) {
  ParameterSet p;
  for (const auto& s : priors) p[s.id] = mean(s.prior);
  return p;
}

double to_unconstrained(Transform t, double x) {
  return t == Transform::Log ? std::log(x) : std::log(x) - std::log1p(-x);
}

double from_unconstrained(Transform t, double z) {
  if (t == Transform::Log) return std::exp(z);
  return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

double log_jacobian(Transform t, double z) {
  if (t == Transform::Log) return z;
  // log(sigmoid(z) * (1 - sigmoid(z)))
  return -std::abs(z) - 2.0 * std::log1p(std::exp(-std::abs(z)));
}

}  // namespace chronsti
