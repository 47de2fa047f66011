#include "chronsti/distributions.h"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace chronsti {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5eedu};
  return Rng(seq);
}

// --- Gamma -----------------------------------------------------------------

double GammaDist::log_pdf(double x) const {
  if (!(x > 0.0) || !std::isfinite(x)) return kNegInf;
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

double GammaDist::quantile(double p) const {
  return boost::math::quantile(boost::math::gamma_distribution<double>(shape, 1.0 / rate), p);
}

double GammaDist::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  return boost::math::cdf(boost::math::gamma_distribution<double>(shape, 1.0 / rate), x);
}

double GammaDist::sample(Rng& rng) const {
  return std::gamma_distribution<double>(shape, 1.0 / rate)(rng);
}

// --- Beta ------------------------------------------------------------------

double BetaDist::log_pdf(double x) const {
  if (!(x > 0.0 && x < 1.0)) return kNegInf;
  return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + (a - 1.0) * std::log(x) +
         (b - 1.0) * std::log1p(-x);
}

double BetaDist::quantile(double p) const {
  return boost::math::quantile(boost::math::beta_distribution<double>(a, b), p);
}

double BetaDist::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::cdf(boost::math::beta_distribution<double>(a, b), x);
}

double BetaDist::sample(Rng& rng) const {
  const double x = std::gamma_distribution<double>(a, 1.0)(rng);
  const double y = std::gamma_distribution<double>(b, 1.0)(rng);
  return x / (x + y);
}

// --- LogNormal -------------------------------------------------------------

double LogNormalDist::mean() const { return std::exp(mu + 0.5 * sigma * sigma); }

double LogNormalDist::variance() const {
  return std::expm1(sigma * sigma) * std::exp(2.0 * mu + sigma * sigma);
}

double LogNormalDist::log_pdf(double x) const {
  if (!(x > 0.0) || !std::isfinite(x)) return kNegInf;
  const double z = (std::log(x) - mu) / sigma;
  return -0.5 * z * z - std::log(x * sigma) - 0.5 * std::log(2.0 * M_PI);
}

double LogNormalDist::quantile(double p) const {
  return boost::math::quantile(boost::math::lognormal_distribution<double>(mu, sigma), p);
}

double LogNormalDist::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  return boost::math::cdf(boost::math::lognormal_distribution<double>(mu, sigma), x);
}

double LogNormalDist::sample(Rng& rng) const {
  return std::lognormal_distribution<double>(mu, sigma)(rng);
}

// --- variant dispatch ------------------------------------------------------

double mean(const Distribution& d) {
  return std::visit([](const auto& x) { return x.mean(); }, d);
}
double variance(const Distribution& d) {
  return std::visit([](const auto& x) { return x.variance(); }, d);
}
double log_pdf(const Distribution& d, double v) {
  return std::visit([v](const auto& x) { return x.log_pdf(v); }, d);
}
double quantile(const Distribution& d, double p) {
  return std::visit([p](const auto& x) { return x.quantile(p); }, d);
}
double cdf(const Distribution& d, double v) {
  return std::visit([v](const auto& x) { return x.cdf(v); }, d);
}
double sample(const Distribution& d, Rng& rng) {
  return std::visit([&rng](const auto& x) { return x.sample(rng); }, d);
}

std::string describe(const Distribution& d) {
  std::ostringstream os;
  os.precision(10);
  std::visit(overloaded{[&](const GammaDist& g) { os << "Gamma(" << g.shape << ", " << g.rate << ")"; },
                        [&](const BetaDist& b) { os << "Beta(" << b.a << ", " << b.b << ")"; },
                        [&](const LogNormalDist& l) {
                          os << "LogNormal(" << l.mu << ", " << l.sigma << ")";
                        }},
             d);
  return os.str();
}

// --- conjugacy and likelihoods --------------------------------------------

GammaDist conjugate_posterior_gamma(const GammaDist& prior, std::span<const std::int64_t> counts) {
  const double sum = std::accumulate(counts.begin(), counts.end(), 0.0,
                                     [](double acc, std::int64_t x) { return acc + static_cast<double>(x); });
  return {prior.shape + sum, prior.rate + static_cast<double>(counts.size())};
}

BetaDist conjugate_posterior_beta(const BetaDist& prior, const BinomialCount& data) {
  if (data.events < 0 || data.events > data.trials)
    throw std::invalid_argument("binomial evidence requires 0 <= r <= n");
  return {prior.a + static_cast<double>(data.events),
          prior.b + static_cast<double>(data.trials - data.events)};
}

double poisson_log_pmf(double y, double mean) {
  if (mean <= 0.0) return y == 0.0 ? 0.0 : kNegInf;
  return y * std::log(mean) - mean - std::lgamma(y + 1.0);
}

double binomial_log_pmf(std::int64_t r, std::int64_t n, double p) {
  if (r < 0 || r > n) return kNegInf;
  const auto rd = static_cast<double>(r);
  const auto nd = static_cast<double>(n);
  const double choose = std::lgamma(nd + 1.0) - std::lgamma(rd + 1.0) - std::lgamma(nd - rd + 1.0);
  if (p <= 0.0) return r == 0 ? 0.0 : kNegInf;
  if (p >= 1.0) return r == n ? 0.0 : kNegInf;
  return choose + rd * std::log(p) + (nd - rd) * std::log1p(-p);
}

}  // namespace chronsti
