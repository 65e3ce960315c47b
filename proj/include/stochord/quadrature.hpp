#ifndef STOCHORD_QUADRATURE_HPP
#define STOCHORD_QUADRATURE_HPP

#include <functional>

namespace stochord {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
};

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [lo, hi].
/// Throws QuadratureError when the subdivision budget is exhausted before
/// the tolerance is met.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureOptions& opt = {});

/// Bracketed root of a monotone function g on [lo, hi] with g(lo), g(hi) of
/// opposite (or zero) sign. Newton steps through the supplied derivative when
/// available, bisection otherwise. Converges to relative tolerance rel_tol.
double solve_monotone(const std::function<double(double)>& g, double lo, double hi,
                      double rel_tol = 1e-12);

}  // namespace stochord

#endif  // STOCHORD_QUADRATURE_HPP
