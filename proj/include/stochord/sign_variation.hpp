#ifndef STOCHORD_SIGN_VARIATION_HPP
#define STOCHORD_SIGN_VARIATION_HPP

#include <functional>
#include <string>
#include <vector>

namespace stochord {

/// Sampling grid for sign-pattern extraction. The default spacing mixes
/// log-spaced points near 0 (where small-shape densities vary fastest) with
/// linear spacing out to x_max.
struct GridConfig {
  int n_points = 4096;
  double x_min = 0.0;
  double x_max = 1.0;
  enum class Spacing { linear, log_linear } spacing = Spacing::log_linear;
  double atol = 1e-12;
  double rtol = 1e-9;
  double refine_tol = 1e-8;  // relative width of refined crossing brackets

  std::vector<double> points() const;
};

struct Crossing {
  double lo = 0.0;
  double hi = 0.0;
};

/// Collapsed sequence of nonzero signs with bracketed crossing locations.
/// Samples inside the zero band (|v| <= atol + rtol * max|f|) never create
/// sign changes. An all-in-band function yields the identically-zero
/// sentinel (empty signs).
struct SignPattern {
  std::vector<int> signs;  // entries are +1 / -1, consecutive entries differ
  std::vector<Crossing> crossings;
  double band = 0.0;

  bool identically_zero() const noexcept { return signs.empty(); }
  int changes() const noexcept { return static_cast<int>(signs.size()) - 1; }
  std::string to_string() const;

  /// Parse a pattern string such as "+,-,+". Crossing data is left empty.
  static SignPattern parse(const std::string& text);
};

/// Sample fn on the grid, classify values against the zero band, collapse
/// runs, and bisection-refine each sign flip down to refine_tol.
SignPattern sign_pattern(const std::function<double(double)>& fn, const GridConfig& grid);

/// True iff the pattern is compatible with convexity of an antiderivative
/// criterion: at most two sign changes and, when exactly two, in the order
/// "+,-,+". Admits the identically-zero sentinel.
bool pattern_admissible_for_convexity(const SignPattern& p);

/// Mirror image: at most two changes and two changes only as "-,+,-".
bool pattern_admissible_for_concavity(const SignPattern& p);

/// Sign pattern of log(fnA) - log(fnB); equal to the pattern of fnA - fnB
/// for strictly positive inputs. Throws NonpositiveSampleError identifying
/// the offending abscissa otherwise.
SignPattern log_sign_transform(const std::function<double(double)>& fnA,
                               const std::function<double(double)>& fnB,
                               const GridConfig& grid);

/// Possible sign variations of g(x) = integral_x^inf f after f's variation is
/// known: the set of (nonempty) suffixes of f's pattern. Only the four orders
/// "-,+", "+,-", "+,-,+", "-,+,-,+" are supported; anything else throws.
std::vector<std::vector<int>> final_part_patterns(const std::vector<int>& signs);

}  // namespace stochord

#endif  // STOCHORD_SIGN_VARIATION_HPP
