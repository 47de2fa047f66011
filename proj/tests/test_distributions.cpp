#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "chronsti/distributions.h"
#include "chronsti/priors.h"
#include "test_util.h"

using namespace chronsti;

TEST(Conjugate, GammaUpdates) {
  const GammaDist prior{0.1, 0.1};
  const auto none = conjugate_posterior_gamma(prior, {});
  EXPECT_EQ(none.shape, 0.1);
  EXPECT_EQ(none.rate, 0.1);

  std::vector<std::int64_t> counts(500, 9);
  for (int i = 0; i < 50; ++i) counts[static_cast<std::size_t>(i)] = 10;  // sum 4550
  const auto post = conjugate_posterior_gamma(prior, counts);
  EXPECT_EQ(post.shape, 0.1 + 4550);
  EXPECT_EQ(post.rate, 0.1 + 500);
  EXPECT_NEAR(post.mean(), 4550.1 / 500.1, 1e-15);
  EXPECT_NEAR(post.mean(), 9.098, 1e-3);

  const std::vector<std::int64_t> three{3};
  const auto unit = conjugate_posterior_gamma(GammaDist{1, 1}, three);
  EXPECT_EQ(unit.shape, 4.0);
  EXPECT_EQ(unit.rate, 2.0);
}

TEST(Conjugate, BetaUpdates) {
  const BetaDist jeffreys{0.5, 0.5};
  const auto none = conjugate_posterior_beta(jeffreys, {0, 0});
  EXPECT_EQ(none.a, 0.5);
  EXPECT_EQ(none.b, 0.5);
  const auto post = conjugate_posterior_beta(jeffreys, {160, 1000});
  EXPECT_EQ(post.a, 160.5);
  EXPECT_EQ(post.b, 840.5);
  EXPECT_NEAR(post.mean(), 160.5 / 1001.0, 1e-15);
  EXPECT_NEAR(post.mean(), 0.1600, 5e-4);
  const auto all = conjugate_posterior_beta(BetaDist{1, 1}, {7, 7});
  EXPECT_EQ(all.a, 8.0);
  EXPECT_EQ(all.b, 1.0);
  EXPECT_THROW(conjugate_posterior_beta(jeffreys, {5, 3}), std::invalid_argument);
}

TEST(Distributions, MomentsMatchClosedForms) {
  const GammaDist g{25600, 32000};
  EXPECT_DOUBLE_EQ(mean(Distribution{g}), 0.8);
  EXPECT_DOUBLE_EQ(variance(Distribution{g}), 25600 / (32000.0 * 32000.0));
  const BetaDist b{5119.2, 1279.8};
  EXPECT_NEAR(mean(Distribution{b}), 0.8, 1e-15);
  const LogNormalDist ln{2.996, 0.693};
  EXPECT_NEAR(mean(Distribution{ln}), std::exp(2.996 + 0.693 * 0.693 / 2), 1e-12);
}

TEST(Distributions, QuantileInvertsCdf) {
  for (const Distribution d : {Distribution{GammaDist{2.5, 3}}, Distribution{BetaDist{2, 7}},
                               Distribution{LogNormalDist{1, 0.4}}})
    for (double p : {0.01, 0.3, 0.5, 0.9, 0.999}) EXPECT_NEAR(cdf(d, quantile(d, p)), p, 1e-10) << describe(d);
}

TEST(Distributions, LogPdfOutsideSupport) {
  EXPECT_EQ(log_pdf(Distribution{GammaDist{2, 1}}, -1.0), -INFINITY);
  EXPECT_EQ(log_pdf(Distribution{BetaDist{2, 2}}, 1.5), -INFINITY);
  EXPECT_NEAR(log_pdf(Distribution{GammaDist{1, 2}}, 0.5), std::log(2.0) - 1.0, 1e-14);
}

TEST(Distributions, SamplersMatchMoments) {
  Rng rng = make_rng(7, 0);
  for (const Distribution d : {Distribution{GammaDist{3, 2}}, Distribution{BetaDist{160.5, 840.5}},
                               Distribution{LogNormalDist{5.011, 0.01}}}) {
    std::vector<double> xs(20000);
    for (double& x : xs) x = sample(d, rng);
    const double se = std::sqrt(variance(d) / xs.size());
    EXPECT_NEAR(testutil::mean(xs), mean(d), 4 * se) << describe(d);
  }
}

TEST(Distributions, SeededStreamsAreIndependentAndReproducible) {
  Rng a = make_rng(1, 0), b = make_rng(1, 0), c = make_rng(1, 1);
  EXPECT_EQ(a(), b());
  EXPECT_NE(make_rng(1, 0)(), c());
}

TEST(Distributions, PoissonAndBinomialLogPmf) {
  EXPECT_NEAR(poisson_log_pmf(3, 2.0), 3 * std::log(2.0) - 2.0 - std::log(6.0), 1e-14);
  EXPECT_EQ(poisson_log_pmf(0, 0.0), 0.0);
  EXPECT_NEAR(binomial_log_pmf(2, 5, 0.3), std::log(10 * 0.09 * std::pow(0.7, 3)), 1e-14);
}

TEST(Priors, DefaultRolesAndFamilies) {
  for (auto engine : {EngineKind::Ode, EngineKind::Markov}) {
    const PriorSet p = default_priors(engine);
    for (std::size_t k = 0; k < kNumParams; ++k) EXPECT_EQ(p[k].id, static_cast<ParamId>(k));
    EXPECT_EQ(p[static_cast<std::size_t>(ParamId::beta)].role, ParamRole::Calibrated);
    EXPECT_EQ(p[static_cast<std::size_t>(ParamId::eta)].role, ParamRole::ConjugateUpdated);
    EXPECT_EQ(p[static_cast<std::size_t>(ParamId::c_dis)].role, ParamRole::FixedPrior);
    const auto& t23 = p[static_cast<std::size_t>(ParamId::trans_2_3)];
    EXPECT_EQ(std::holds_alternative<BetaDist>(t23.prior), engine == EngineKind::Markov);
    EXPECT_EQ(t23.transform, engine == EngineKind::Markov ? Transform::Logit : Transform::Log);
  }
}

TEST(Priors, PriorMeansMatchTableMeans) {
  const ParameterSet ode = prior_means(default_priors(EngineKind::Ode));
  const ParameterSet mm = prior_means(default_priors(EngineKind::Markov));
  for (auto id : {ParamId::chi, ParamId::trans_2_3, ParamId::trans_3_4, ParamId::trans_4_5}) {
    EXPECT_NEAR(ode[id], mm[id], 0.01 * ode[id]) << param_name(id);
  }
  EXPECT_NEAR(ode[ParamId::c_treat], 4999.78, 1.0);
  EXPECT_NEAR(mm[ParamId::u_4], 0.30, 1e-3);
}

TEST(Priors, TransformsRoundTrip) {
  for (double x : {1e-6, 0.3, 0.5, 0.999}) {
    EXPECT_NEAR(from_unconstrained(Transform::Logit, to_unconstrained(Transform::Logit, x)), x, 1e-14);
    EXPECT_NEAR(from_unconstrained(Transform::Log, to_unconstrained(Transform::Log, x)), x, 1e-14);
  }
  // d/dz sigmoid(z) = sigmoid(z)(1 - sigmoid(z))
  const double z = 0.7, h = 1e-6;
  const double numeric = (from_unconstrained(Transform::Logit, z + h) - from_unconstrained(Transform::Logit, z - h)) / (2 * h);
  EXPECT_NEAR(std::exp(log_jacobian(Transform::Logit, z)), numeric, 1e-9);
}
