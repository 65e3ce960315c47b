#include "stochord/iterated_tail.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "stochord/errors.hpp"
#include "stochord/special_functions.hpp"

namespace stochord {

IteratedTailEvaluator::IteratedTailEvaluator(DistributionSpec spec, int s, int max_level)
    : spec_(std::move(spec)), s_(s) {
  if (s < 1) throw std::invalid_argument("iteration level s must be >= 1");
  if (s > max_level) {
    throw std::invalid_argument("iteration level s = " + std::to_string(s) +
                                " exceeds cap " + std::to_string(max_level));
  }
  moments_.reserve(s);
  log_moments_.reserve(s);
  for (int m = 0; m < s; ++m) {
    // Throws MomentUndefinedError naming the failing order.
    log_moments_.push_back(spec_.log_raw_moment(m));
    moments_.push_back(std::exp(log_moments_.back()));
  }
  mu_.resize(s);
  mu_[0] = 1.0;
  for (int j = 1; j < s; ++j) {
    // mu~_j = (1/j) E X^j / E X^(j-1), from the moment identity.
    mu_[j] = std::exp(log_moments_[j] - log_moments_[j - 1]) / j;
  }
  trunc_ = spec_.quantile(1.0 - 1e-12);
}

double IteratedTailEvaluator::tail_at_level(int level, double x) const {
  if (level < 0 || level > s_) {
    throw std::invalid_argument("tail level out of range");
  }
  if (level == 0) return spec_.pdf(x);
  if (x < 0.0) return 1.0;
  if (x == 0.0) return 1.0;

  const double shape = spec_.shape();
  const double scale = spec_.scale();
  switch (spec_.family()) {
    case Family::exponential:
      // The exponential is a fixed point of tail iteration.
      return std::exp(-x / scale);
    case Family::gamma: {
      // Binomial expansion of (t-x)^(L-1) turns the partial moment into a
      // finite sum of upper incomplete gamma terms.
      const double z = x / scale;
      const double log_norm = spec_.log_raw_moment(level - 1);
      double sum = 0.0;
      for (int j = level - 1; j >= 0; --j) {
        const double q = special::regularized_gamma_q(shape + j, z);
        if (q == 0.0) continue;
        const double log_c = special::log_binomial(level - 1, j) + j * std::log(scale) +
                             std::lgamma(shape + j) - std::lgamma(shape) - log_norm;
        const double mag = std::exp(log_c + (level - 1 - j) * std::log(x)) * q;
        sum += ((level - 1 - j) % 2 == 0) ? mag : -mag;
      }
      return std::max(sum, 0.0);
    }
    case Family::weibull: {
      // Substituting u = (t/scale)^shape gives the same incomplete-gamma sum
      // with non-integer first arguments.
      const double z = std::pow(x / scale, shape);
      const double log_norm = spec_.log_raw_moment(level - 1);
      double sum = 0.0;
      for (int j = level - 1; j >= 0; --j) {
        const double q = special::regularized_gamma_q(1.0 + j / shape, z);
        if (q == 0.0) continue;
        const double log_c = special::log_binomial(level - 1, j) + j * std::log(scale) +
                             std::lgamma(1.0 + j / shape) - log_norm;
        const double mag = std::exp(log_c + (level - 1 - j) * std::log(x)) * q;
        sum += ((level - 1 - j) % 2 == 0) ? mag : -mag;
      }
      return std::max(sum, 0.0);
    }
    case Family::inverse_gamma:
      if (level == 1) return spec_.survival(x);
      return tail_quadrature_at_level(level, x, {});
  }
  return 0.0;
}

double IteratedTailEvaluator::tail_quadrature_at_level(int level, double x,
                                                       const QuadratureOptions& opt) const {
  const double log_norm = spec_.log_raw_moment(level - 1);
  const double hi = std::max(trunc_, x + trunc_ + 10.0 * spec_.scale());
  auto integrand = [&](double t) {
    if (t <= x) return 0.0;
    const double lp = spec_.log_pdf(t);
    if (!std::isfinite(lp) && lp < 0.0) return 0.0;
    return std::exp(lp + (level - 1) * std::log(t - x) - log_norm);
  };
  if (x >= hi) return 0.0;
  return std::max(integrate(integrand, x, hi, opt), 0.0);
}

double IteratedTailEvaluator::tail_via_quadrature(double x, const QuadratureOptions& opt) const {
  if (x < 0.0) return 1.0;
  return tail_quadrature_at_level(s_, x, opt);
}

double IteratedTailEvaluator::tail_via_recursion(double x, int k,
                                                 const QuadratureOptions& opt) const {
  if (k < 1 || k > s_) throw std::invalid_argument("tail_via_recursion: need 1 <= k <= s");
  if (x < 0.0) return 1.0;
  double log_prefactor = -std::lgamma(static_cast<double>(k));
  for (int j = 1; j <= k; ++j) log_prefactor -= std::log(mu_[s_ - j]);
  const double hi = std::max(trunc_, x + trunc_ + 10.0 * spec_.scale());
  auto integrand = [&](double t) {
    if (t <= x) return 0.0;
    const double inner = tail_at_level(s_ - k, t);
    if (inner <= 0.0) return 0.0;
    return std::exp(log_prefactor + (k - 1) * std::log(t - x) + std::log(inner));
  };
  if (x >= hi) return 0.0;
  return std::max(integrate(integrand, x, hi, opt), 0.0);
}

}  // namespace stochord
