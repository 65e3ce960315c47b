#ifndef STOCHORD_AGEING_HPP
#define STOCHORD_AGEING_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stochord/iterated_tail.hpp"
#include "stochord/sign_variation.hpp"

namespace stochord {

/// s-iterated failure rate r_{X,s}(x) = T-bar_{s-1}(x) / (mu~_{s-1} T-bar_s(x)).
/// For s = 1 this is the classical hazard rate f / F-bar.
/// Throws RateIndeterminateError when both tails underflow.
double failure_rate(const IteratedTailEvaluator& ev, double x);

enum class Monotonicity { increasing, decreasing, neither };

/// Line-crossing monotonicity test: fn is reported increasing when, for every
/// threshold a, the sign pattern of fn - a is "-", "+" or "-,+" (mirrored for
/// decreasing). A direct grid-difference test runs in parallel; disagreement
/// yields "neither".
Monotonicity monotone_via_line_crossings(const std::function<double(double)>& fn,
                                         const std::vector<double>& thresholds,
                                         const GridConfig& grid);

struct AgeingWitness {
  std::string notion;
  double x = 0.0;
  std::optional<double> t;  // second coordinate for the NBU grid
};

struct AgeingGridMeta {
  int n_points = 0;
  double x_origin = 0.0;      // right-limit point standing in for 0
  double x_max = 0.0;         // truncation point q(1 - 1e-6)
  double nbu_extent = 0.0;    // NBU triangular grid covers [0, nbu_extent]^2
  int nbu_steps = 0;
};

struct AgeingReport {
  int s = 0;
  bool is_s_ifr = false;
  bool is_s_dfr = false;
  bool is_s_ifra = false;
  bool is_s_nbu = false;
  bool is_s_nbufr = false;
  bool is_s_nbafr = false;
  std::vector<AgeingWitness> witnesses;
  AgeingGridMeta grid_meta;
};

struct ClassifyOptions {
  int n_points = 4096;
  int nbu_steps = 200;      // triangular grid resolution per axis
  double const_rel_tol = 1e-7;  // constant-rate band: classified both IFR and DFR
};

/// Evaluate all six ageing notions on a grid reaching q(1 - 1e-6).
AgeingReport classify_ageing(const IteratedTailEvaluator& ev, const ClassifyOptions& opt = {});

/// True iff the implication chain
/// s-IFR => s-IFRA => s-NBU => s-NBUFR => s-NBAFR holds inside the report.
bool hierarchy_check(const AgeingReport& report);

}  // namespace stochord

#endif  // STOCHORD_AGEING_HPP
