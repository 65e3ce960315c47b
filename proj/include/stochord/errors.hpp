#ifndef STOCHORD_ERRORS_HPP
#define STOCHORD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stochord {

/// Requested raw moment does not exist for the distribution (e.g. inverse
/// gamma with shape alpha only has moments of order m < alpha).
class MomentUndefinedError : public std::domain_error {
 public:
  MomentUndefinedError(int order, const std::string& what)
      : std::domain_error(what), order_(order) {}
  int order() const noexcept { return order_; }

 private:
  int order_;
};

/// Adaptive quadrature failed to reach the requested tolerance within the
/// subdivision budget. Never downgraded to a warning.
class QuadratureError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Both tails underflowed, so the iterated failure rate is 0/0.
class RateIndeterminateError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A function that must be strictly positive produced a nonpositive sample.
class NonpositiveSampleError : public std::domain_error {
 public:
  NonpositiveSampleError(double x, const std::string& what)
      : std::domain_error(what), abscissa_(x) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

}  // namespace stochord

#endif  // STOCHORD_ERRORS_HPP
