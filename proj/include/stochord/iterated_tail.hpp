#ifndef STOCHORD_ITERATED_TAIL_HPP
#define STOCHORD_ITERATED_TAIL_HPP

#include <vector>

#include "stochord/distributions.hpp"
#include "stochord/quadrature.hpp"

namespace stochord {

/// Default cap on the iteration level; moment growth makes higher levels
/// numerically pointless at desk scale.
inline constexpr int kDefaultMaxIterationLevel = 8;

/// Evaluates the s-iterated tail of a distribution together with the
/// normalizing ladder mu~_j, j = 0..s-1. Tail levels:
///   level 0  -> the density,
///   level 1  -> the survival function,
///   level j  -> tail obtained by j-fold normalized tail-integration.
/// Moments and the ladder are cached at construction; evaluation afterwards
/// is pure, so evaluators may be shared across threads freely.
class IteratedTailEvaluator {
 public:
  /// Throws MomentUndefinedError when E X^(s-1) does not exist, naming the
  /// failing moment order.
  IteratedTailEvaluator(DistributionSpec spec, int s,
                        int max_level = kDefaultMaxIterationLevel);

  const DistributionSpec& spec() const noexcept { return spec_; }
  int level() const noexcept { return s_; }

  /// E X^m for m = 0..s-1.
  const std::vector<double>& moments() const noexcept { return moments_; }
  /// mu~_j for j = 0..s-1 (mu~_0 = 1).
  const std::vector<double>& mu_ladder() const noexcept { return mu_; }
  double mu(int j) const { return mu_.at(j); }

  /// T-bar_{X,s}(x). Equals 1 for x < 0. Closed fast paths for the
  /// exponential (every s), gamma and weibull (incomplete-gamma sums) and
  /// the inverse-gamma survival; quadrature of the partial-moment integrand
  /// otherwise.
  double tail(double x) const { return tail_at_level(s_, x); }

  /// T-bar_{X,j}(x) for 0 <= j <= s (level 0 is the density).
  double tail_at_level(int level, double x) const;

  /// Same tail through the k-fold integral recursion
  ///   T-bar_s(x) = (1 / prod_{j=1..k} mu~_{s-j})
  ///                * integral_x^inf (t-x)^{k-1}/(k-1)! T-bar_{s-k}(t) dt.
  /// Exists to cross-validate the closed representation. Requires 1 <= k <= s.
  double tail_via_recursion(double x, int k, const QuadratureOptions& opt = {}) const;

  /// Generic quadrature of the partial-moment representation, bypassing the
  /// family fast paths. Cross-check only.
  double tail_via_quadrature(double x, const QuadratureOptions& opt = {}) const;

  /// Domain truncation point quantile(1 - 1e-12) used for improper integrals.
  double truncation_point() const noexcept { return trunc_; }

 private:
  double tail_quadrature_at_level(int level, double x, const QuadratureOptions& opt) const;

  DistributionSpec spec_;
  int s_;
  std::vector<double> moments_;
  std::vector<double> log_moments_;
  std::vector<double> mu_;
  double trunc_;
};

}  // namespace stochord

#endif  // STOCHORD_ITERATED_TAIL_HPP
