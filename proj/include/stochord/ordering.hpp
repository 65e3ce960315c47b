#ifndef STOCHORD_ORDERING_HPP
#define STOCHORD_ORDERING_HPP

#include <optional>
#include <string>
#include <vector>

#include "stochord/iterated_tail.hpp"
#include "stochord/sign_variation.hpp"

namespace stochord {

/// Affine reparametrization probe (a, b) with a > 0; a <= 0 never produces
/// an inadmissible pattern and is excluded from scans.
struct ComparisonProbe {
  double a = 1.0;
  double b = 0.0;
};

enum class Direction {
  x_more_sifr,
  y_more_sifr,
  equivalent,
  not_comparable,
  inconclusive,
};

enum class Method {
  proven_by_theorem,
  exponential_characterization,
  numerically_supported,
  violation_certificate,
};

std::string direction_name(Direction d);
std::string method_name(Method m);

struct ViolationEvidence {
  ComparisonProbe probe;
  SignPattern pattern;
};

struct OrderVerdict {
  Direction direction = Direction::inconclusive;
  Method method = Method::numerically_supported;
  int s = 1;
  /// Proposition applied, parameter conditions, or probe-grid summary.
  std::string detail;
  std::optional<ViolationEvidence> violation_against_x;  // probe violating "X more s-IFR"
  std::optional<ViolationEvidence> violation_against_y;  // probe violating "Y more s-IFR"
  std::size_t probes_scanned = 0;
};

struct SampledCurve {
  std::vector<double> x;
  std::vector<double> y;
  bool truncated = false;  // tail underflowed before x_max
};

enum class CurveShape { convex, concave, affine, neither };

struct ConvexityResult {
  CurveShape shape = CurveShape::neither;
  /// A line witnessing non-convexity (or non-concavity) together with the
  /// offending crossing pattern.
  std::optional<ViolationEvidence> witness;
};

/// Samples c_s(x) = T-bar_{Y,s}^{-1}(T-bar_{X,s}(x)); the inner inverse is a
/// monotone bisection to relative 1e-10.
SampledCurve c_s_curve(const IteratedTailEvaluator& evX, const IteratedTailEvaluator& evY,
                       const GridConfig& grid);

/// Line-crossing convexity classification of a sampled curve. Probe lines are
/// shifted secants; a second-difference test runs as a consistency guard.
ConvexityResult convexity_check(const SampledCurve& curve);

/// V_s(x) = T-bar_{Y,s}(x) - T-bar_{X,s}(a x + b), with the tail equal to 1
/// for negative arguments.
double v_s(const IteratedTailEvaluator& evX, const IteratedTailEvaluator& evY,
           const ComparisonProbe& probe, double x);

/// H_k(x) = T-bar_{Y,s-k}(x)/prod mu~_Y - a^k T-bar_{X,s-k}(a x + b)/prod mu~_X
/// (level 0 is the density). Requires 1 <= k <= s.
double h_k(const IteratedTailEvaluator& evX, const IteratedTailEvaluator& evY, int k,
           const ComparisonProbe& probe, double x);

/// Gamma-Gamma log-density criterion P_s at unit scale; X is the candidate
/// more-s-IFR side with shape alpha_prime, Y has shape alpha.
/// Throws std::domain_error when x <= 0 or a x + b <= 0.
double p_s_gamma(double alpha, double alpha_prime, int s, const ComparisonProbe& probe,
                 double x);

/// Numerator of the derivative of P_s:
/// N_s(x) = a(a-1)x^2 + ((alpha - alpha')a + (a-1)b)x + (alpha-1)b.
double n_s_gamma(double alpha, double alpha_prime, const ComparisonProbe& probe, double x);

struct WeibullCriterion {
  double p;                  // P_{s-1}(x), log-survival criterion
  double q;                  // Q_{s-1}(x), log transform of P'_{s-1}
  double q_prime_numerator;  // a(alpha' - alpha)x + (1 - alpha)b
};

/// Weibull-Weibull log-survival criterion at unit scale. Requires s >= 2.
WeibullCriterion p_weibull(double alpha, double alpha_prime, int s,
                           const ComparisonProbe& probe, double x);

/// Default (a, b) probe grid: a geometric over [2^-4, 2^4] (33 points), b
/// signed-geometric inside +-q_X(0.999) (41 points including 0).
std::vector<ComparisonProbe> default_probe_grid(const DistributionSpec& specX,
                                                int n_a = 33, int n_b = 41);

struct ScanOptions {
  int n_points = 512;   // pattern grid resolution per probe
  int n_a = 33;
  int n_b = 41;
};

/// Single-direction raw scan for the hypothesis "X more s-IFR than Y".
struct ScanResult {
  bool clean = true;
  std::size_t probes_scanned = 0;
  std::optional<ViolationEvidence> violation;
};
ScanResult v_s_scan_direction(const IteratedTailEvaluator& evX,
                              const IteratedTailEvaluator& evY,
                              const std::vector<ComparisonProbe>& probes,
                              const ScanOptions& opt = {});

/// Theorem-driven probe scan in both directions. A finite scan can falsify
/// but never prove, so clean outcomes are labeled numerically_supported.
OrderVerdict v_s_scan(const IteratedTailEvaluator& evX, const IteratedTailEvaluator& evY,
                      const ScanOptions& opt = {});

/// Gamma-Gamma shape-ordering fast path; nullopt outside the proven regions.
std::optional<OrderVerdict> analytic_compare_gamma(double alphaX, double thetaX,
                                                   double alphaY, double thetaY, int s);

/// Weibull-Weibull shape-ordering fast path; nullopt outside the proven regions.
std::optional<OrderVerdict> analytic_compare_weibull(double alphaX, double thetaX,
                                                     double alphaY, double thetaY, int s);

/// Order against the exponential: X more s-IFR iff X is s-IFR, exponential
/// more s-IFR iff X is s-DFR; inconclusive when the rate is non-monotone.
OrderVerdict compare_exponential(const IteratedTailEvaluator& ev, double rate);

struct CompareConfig {
  ScanOptions scan;
  bool enable_analytic = true;
  bool enable_exponential = true;
  bool enable_log_criterion = true;
};

/// Full s-IFR order decision: equivalence detection, analytic comparators,
/// exponential characterization, P_s / P_{s-1} log-criterion scans, and the
/// V_s probe scan, in that order.
OrderVerdict compare_sifr(const DistributionSpec& specX, const DistributionSpec& specY,
                          int s, const CompareConfig& config = {});

}  // namespace stochord

#endif  // STOCHORD_ORDERING_HPP
