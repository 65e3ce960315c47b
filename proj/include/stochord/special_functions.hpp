#ifndef STOCHORD_SPECIAL_FUNCTIONS_HPP
#define STOCHORD_SPECIAL_FUNCTIONS_HPP

namespace stochord::special {

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
/// Series expansion for x < a + 1, continued fraction otherwise.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// log of the binomial coefficient C(n, k).
double log_binomial(int n, int k);

}  // namespace stochord::special

#endif  // STOCHORD_SPECIAL_FUNCTIONS_HPP
