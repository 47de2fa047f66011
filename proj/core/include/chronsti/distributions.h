#pragma once

// Parametric families used for priors, conjugate updates and evidence
// likelihoods. Sampling draws from std::mt19937_64 so that a fixed seed
// gives bit-identical streams on a given standard library.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>

namespace chronsti {

using Rng = std::mt19937_64;

/// Deterministic stream for (seed, stream id); distinct ids give
/// statistically independent engines.
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

struct GammaDist {
  double shape;
  double rate;

  double mean() const { return shape / rate; }
  double variance() const { return shape / (rate * rate); }
  double log_pdf(double x) const;
  double quantile(double p) const;
  double cdf(double x) const;
  double sample(Rng& rng) const;
};

struct BetaDist {
  double a;
  double b;

  double mean() const { return a / (a + b); }
  double variance() const { return a * b / ((a + b) * (a + b) * (a + b + 1.0)); }
  double log_pdf(double x) const;
  double quantile(double p) const;
  double cdf(double x) const;
  double sample(Rng& rng) const;
};

// Parameterized by the mean and standard deviation of log(x).
struct LogNormalDist {
  double mu;
  double sigma;

  double mean() const;
  double variance() const;
  double log_pdf(double x) const;
  double quantile(double p) const;
  double cdf(double x) const;
  double sample(Rng& rng) const;
};

using Distribution = std::variant<GammaDist, BetaDist, LogNormalDist>;

double mean(const Distribution& d);
double variance(const Distribution& d);
double log_pdf(const Distribution& d, double x);
double quantile(const Distribution& d, double p);
double cdf(const Distribution& d, double x);
double sample(const Distribution& d, Rng& rng);
std::string describe(const Distribution& d);

struct BinomialCount {
  std::int64_t events = 0;
  std::int64_t trials = 0;
};

/// Gamma(a, b) prior with Poisson counts x_1..x_n -> Gamma(a + sum x, b + n).
GammaDist conjugate_posterior_gamma(const GammaDist& prior, std::span<const std::int64_t> counts);

/// Beta(a, b) prior with r events in n trials -> Beta(a + r, b + n - r).
BetaDist conjugate_posterior_beta(const BetaDist& prior, const BinomialCount& data);

double poisson_log_pmf(double y, double mean);
double binomial_log_pmf(std::int64_t r, std::int64_t n, double p);

}  // namespace chronsti
