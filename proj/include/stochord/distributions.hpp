#ifndef STOCHORD_DISTRIBUTIONS_HPP
#define STOCHORD_DISTRIBUTIONS_HPP

#include <string>

namespace stochord {

enum class Family { exponential, gamma, weibull, inverse_gamma };

std::string family_name(Family f);

/// A parametric nonnegative distribution: exponential(scale),
/// gamma(shape, scale), weibull(shape, scale) or inverse_gamma(shape, scale).
/// All parameters are validated at construction; evaluation is pure and
/// thread-safe.
class DistributionSpec {
 public:
  static DistributionSpec exponential(double scale);
  static DistributionSpec gamma(double shape, double scale);
  static DistributionSpec weibull(double shape, double scale);
  static DistributionSpec inverse_gamma(double shape, double scale);

  /// Parse "family:shape:scale" (exponential takes a single scale field).
  static DistributionSpec parse(const std::string& text);

  Family family() const noexcept { return family_; }
  double shape() const noexcept { return shape_; }
  double scale() const noexcept { return scale_; }

  double pdf(double x) const;
  double log_pdf(double x) const;
  double cdf(double x) const;
  /// Survival F-bar(x) = 1 - F(x); returns 1 for x < 0.
  double survival(double x) const;
  /// x with F(x) = p, relative tolerance 1e-10. Requires 0 < p < 1.
  double quantile(double p) const;

  bool moment_exists(int m) const noexcept;
  /// E X^m via closed form in log-gamma arithmetic.
  /// Throws MomentUndefinedError when the moment does not exist.
  double raw_moment(int m) const;
  double log_raw_moment(int m) const;

  /// Distribution of c*X for c > 0 (all four families are scale families).
  DistributionSpec scaled(double c) const;

  std::string to_string() const;

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

 private:
  DistributionSpec(Family family, double shape, double scale);

  Family family_;
  double shape_;
  double scale_;
};

}  // namespace stochord

#endif  // STOCHORD_DISTRIBUTIONS_HPP
