#include "stochord/distributions.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "stochord/errors.hpp"
#include "stochord/quadrature.hpp"
#include "stochord/special_functions.hpp"

namespace stochord {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Quantile of the standard gamma(a, 1): root of P(a, z) = p.
// Wilson-Hilferty start, safeguarded Newton with a bisection bracket.
double standard_gamma_quantile(double a, double p) {
  // Wilson-Hilferty: z ~ a * (1 - 1/(9a) + w/(3 sqrt(a)))^3 with w = Phi^-1(p).
  // A crude normal quantile is good enough as a starting point.
  const double t = (p < 0.5) ? std::sqrt(-2.0 * std::log(p)) : std::sqrt(-2.0 * std::log1p(-p));
  double w = t - (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t));
  if (p < 0.5) w = -w;
  double z = a * std::pow(std::max(1.0 - 1.0 / (9.0 * a) + w / (3.0 * std::sqrt(a)), 0.1), 3.0);
  if (!(z > 0.0) || !std::isfinite(z)) z = a;

  // Establish a bracket around the root.
  double lo = z, hi = z;
  if (special::regularized_gamma_p(a, z) < p) {
    while (special::regularized_gamma_p(a, hi) < p) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) break;
    }
  } else {
    while (lo > 1e-300 && special::regularized_gamma_p(a, lo) > p) {
      hi = lo;
      lo *= 0.5;
    }
  }

  z = 0.5 * (lo + hi);
  const double log_norm = -std::lgamma(a);
  for (int i = 0; i < 100; ++i) {
    const double err = special::regularized_gamma_p(a, z) - p;
    if (err > 0.0) {
      hi = z;
    } else {
      lo = z;
    }
    const double dens = std::exp(log_norm + (a - 1.0) * std::log(z) - z);
    double next = (dens > 0.0) ? z - err / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - z) <= 1e-12 * std::max(1.0, std::abs(next))) return next;
    z = next;
  }
  return z;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::exponential: return "exponential";
    case Family::gamma: return "gamma";
    case Family::weibull: return "weibull";
    case Family::inverse_gamma: return "inverse_gamma";
  }
  return "?";
}

DistributionSpec::DistributionSpec(Family family, double shape, double scale)
    : family_(family), shape_(shape), scale_(scale) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw std::invalid_argument("distribution shape must be strictly positive");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("distribution scale must be strictly positive");
  }
}

DistributionSpec DistributionSpec::exponential(double scale) {
  return {Family::exponential, 1.0, scale};
}
DistributionSpec DistributionSpec::gamma(double shape, double scale) {
  return {Family::gamma, shape, scale};
}
DistributionSpec DistributionSpec::weibull(double shape, double scale) {
  return {Family::weibull, shape, scale};
}
DistributionSpec DistributionSpec::inverse_gamma(double shape, double scale) {
  return {Family::inverse_gamma, shape, scale};
}

DistributionSpec DistributionSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ':')) parts.push_back(item);
  auto num = [&](const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad number in spec: " + s);
    return v;
  };
  if (parts.size() == 2 && parts[0] == "exponential") return exponential(num(parts[1]));
  if (parts.size() == 3) {
    if (parts[0] == "gamma") return gamma(num(parts[1]), num(parts[2]));
    if (parts[0] == "weibull") return weibull(num(parts[1]), num(parts[2]));
    if (parts[0] == "inverse_gamma") return inverse_gamma(num(parts[1]), num(parts[2]));
  }
  throw std::invalid_argument("cannot parse distribution spec '" + text +
                              "'; expected family:shape:scale (exponential:scale)");
}

double DistributionSpec::log_pdf(double x) const {
  if (x < 0.0) return -kInf;
  switch (family_) {
    case Family::exponential:
      return -x / scale_ - std::log(scale_);
    case Family::gamma:
      if (x == 0.0) return (shape_ > 1.0) ? -kInf : (shape_ == 1.0 ? -std::log(scale_) : kInf);
      return (shape_ - 1.0) * std::log(x / scale_) - x / scale_ - std::lgamma(shape_) -
             std::log(scale_);
    case Family::weibull: {
      if (x == 0.0) return (shape_ > 1.0) ? -kInf : (shape_ == 1.0 ? -std::log(scale_) : kInf);
      const double z = x / scale_;
      return std::log(shape_ / scale_) + (shape_ - 1.0) * std::log(z) - std::pow(z, shape_);
    }
    case Family::inverse_gamma:
      if (x == 0.0) return -kInf;
      return shape_ * std::log(scale_) - std::lgamma(shape_) - (shape_ + 1.0) * std::log(x) -
             scale_ / x;
  }
  return -kInf;
}

double DistributionSpec::pdf(double x) const { return std::exp(log_pdf(x)); }

double DistributionSpec::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  switch (family_) {
    case Family::exponential:
      return -std::expm1(-x / scale_);
    case Family::gamma:
      return special::regularized_gamma_p(shape_, x / scale_);
    case Family::weibull:
      return -std::expm1(-std::pow(x / scale_, shape_));
    case Family::inverse_gamma:
      return special::regularized_gamma_q(shape_, scale_ / x);
  }
  return 0.0;
}

double DistributionSpec::survival(double x) const {
  if (x <= 0.0) return 1.0;
  switch (family_) {
    case Family::exponential:
      return std::exp(-x / scale_);
    case Family::gamma:
      return special::regularized_gamma_q(shape_, x / scale_);
    case Family::weibull:
      return std::exp(-std::pow(x / scale_, shape_));
    case Family::inverse_gamma:
      return special::regularized_gamma_p(shape_, scale_ / x);
  }
  return 0.0;
}

double DistributionSpec::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("quantile: p must lie in (0, 1)");
  }
  switch (family_) {
    case Family::exponential:
      return -scale_ * std::log1p(-p);
    case Family::gamma:
      return scale_ * standard_gamma_quantile(shape_, p);
    case Family::weibull:
      return scale_ * std::pow(-std::log1p(-p), 1.0 / shape_);
    case Family::inverse_gamma:
      // F(x) = Q(alpha, beta/x) = p  <=>  beta/x solves P(alpha, z) = 1 - p.
      return scale_ / standard_gamma_quantile(shape_, 1.0 - p);
  }
  return 0.0;
}

bool DistributionSpec::moment_exists(int m) const noexcept {
  if (m < 0) return false;
  if (family_ == Family::inverse_gamma) return m < shape_;
  return true;
}

double DistributionSpec::log_raw_moment(int m) const {
  if (m < 0 || !moment_exists(m)) {
    throw MomentUndefinedError(
        m, "moment of order " + std::to_string(m) + " undefined for " + to_string());
  }
  if (m == 0) return 0.0;
  switch (family_) {
    case Family::exponential:
      return std::lgamma(m + 1.0) + m * std::log(scale_);
    case Family::gamma:
      return std::lgamma(shape_ + m) - std::lgamma(shape_) + m * std::log(scale_);
    case Family::weibull:
      return std::lgamma(1.0 + m / shape_) + m * std::log(scale_);
    case Family::inverse_gamma:
      return std::lgamma(shape_ - m) - std::lgamma(shape_) + m * std::log(scale_);
  }
  return 0.0;
}

double DistributionSpec::raw_moment(int m) const { return std::exp(log_raw_moment(m)); }

DistributionSpec DistributionSpec::scaled(double c) const {
  if (!(c > 0.0)) throw std::invalid_argument("scaled: factor must be positive");
  return {family_, shape_, scale_ * c};
}

std::string DistributionSpec::to_string() const {
  std::ostringstream out;
  out << family_name(family_);
  if (family_ != Family::exponential) out << ":" << shape_;
  out << ":" << scale_;
  return out.str();
}

}  // namespace stochord
