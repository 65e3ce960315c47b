#include "stochord/ageing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stochord/errors.hpp"

namespace stochord {

double failure_rate(const IteratedTailEvaluator& ev, double x) {
  const int s = ev.level();
  const double upper = ev.tail_at_level(s - 1, x);
  const double lower = ev.tail(x);
  if (upper < 1e-300 && lower < 1e-300) {
    throw RateIndeterminateError("rate indeterminate beyond truncation point, x = " +
                                 std::to_string(x));
  }
  return upper / (ev.mu(s - 1) * lower);
}

namespace {

// Collapsed sign pattern of sampled values against a zero band.
std::vector<int> collapse_signs(const std::vector<double>& vs, double band) {
  std::vector<int> signs;
  int last = 0;
  for (double v : vs) {
    if (!(std::abs(v) > band)) continue;
    const int s = (v > 0.0) ? +1 : -1;
    if (s != last) {
      signs.push_back(s);
      last = s;
    }
  }
  return signs;
}

bool signs_allow_increasing(const std::vector<int>& signs) {
  if (signs.size() > 2) return false;
  if (signs.size() == 2) return signs[0] < 0;  // "-,+"
  return true;
}

bool signs_allow_decreasing(const std::vector<int>& signs) {
  if (signs.size() > 2) return false;
  if (signs.size() == 2) return signs[0] > 0;  // "+,-"
  return true;
}

struct MonotoneScan {
  bool increasing = false;
  bool decreasing = false;
  bool constant = false;
  std::size_t witness_up = 0;    // index of first rise (against decreasing)
  std::size_t witness_down = 0;  // index of first drop (against increasing)
};

// Dual test on sampled values: direct differences and threshold crossings
// must agree, else neither.
MonotoneScan scan_monotone(const std::vector<double>& vs, double const_rel_tol) {
  MonotoneScan result;
  const auto [mn_it, mx_it] = std::minmax_element(vs.begin(), vs.end());
  const double mn = *mn_it, mx = *mx_it;
  const double magnitude = std::max(std::abs(mn), std::abs(mx));
  if (mx - mn <= const_rel_tol * std::max(magnitude, 1e-300)) {
    result.increasing = result.decreasing = result.constant = true;
    return result;
  }

  bool diff_inc = true, diff_dec = true;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    const double tol = 3e-7 * (std::abs(vs[i]) + std::abs(vs[i + 1])) + 1e-12;
    if (vs[i + 1] < vs[i] - tol) {
      if (diff_inc) result.witness_down = i + 1;
      diff_inc = false;
    }
    if (vs[i + 1] > vs[i] + tol) {
      if (diff_dec) result.witness_up = i + 1;
      diff_dec = false;
    }
    if (!diff_inc && !diff_dec) break;
  }

  // Crossing ladder over interior deciles of the observed range.
  bool cross_inc = true, cross_dec = true;
  for (int k = 1; k <= 9; ++k) {
    const double a = mn + (mx - mn) * k / 10.0;
    std::vector<double> shifted(vs.size());
    double max_abs = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      shifted[i] = vs[i] - a;
      max_abs = std::max(max_abs, std::abs(shifted[i]));
    }
    const auto signs = collapse_signs(shifted, 1e-12 + 1e-9 * max_abs);
    cross_inc = cross_inc && signs_allow_increasing(signs);
    cross_dec = cross_dec && signs_allow_decreasing(signs);
    if (!cross_inc && !cross_dec) break;
  }

  result.increasing = diff_inc && cross_inc;
  result.decreasing = diff_dec && cross_dec;
  return result;
}

}  // namespace

Monotonicity monotone_via_line_crossings(const std::function<double(double)>& fn,
                                         const std::vector<double>& thresholds,
                                         const GridConfig& grid) {
  const auto xs = grid.points();
  std::vector<double> vs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) vs[i] = fn(xs[i]);

  bool inc = true, dec = true;
  for (double a : thresholds) {
    std::vector<double> shifted(vs.size());
    double max_abs = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      shifted[i] = vs[i] - a;
      max_abs = std::max(max_abs, std::abs(shifted[i]));
    }
    const auto signs = collapse_signs(shifted, grid.atol + grid.rtol * max_abs);
    inc = inc && signs_allow_increasing(signs);
    dec = dec && signs_allow_decreasing(signs);
  }

  // Guard against tolerance artifacts with plain differences.
  const MonotoneScan diff = scan_monotone(vs, 1e-12);
  if (inc && !dec && diff.increasing) return Monotonicity::increasing;
  if (dec && !inc && diff.decreasing) return Monotonicity::decreasing;
  if (inc && dec) {
    if (diff.increasing) return Monotonicity::increasing;
    if (diff.decreasing) return Monotonicity::decreasing;
  }
  return Monotonicity::neither;
}

AgeingReport classify_ageing(const IteratedTailEvaluator& ev, const ClassifyOptions& opt) {
  AgeingReport report;
  report.s = ev.level();

  // Right limit stands in for x = 0 where the density blows up.
  const double x0 = ev.spec().quantile(1e-6);
  const double x_max = ev.spec().quantile(1.0 - 1e-6);
  GridConfig grid;
  grid.n_points = opt.n_points;
  grid.x_min = x0;
  grid.x_max = x_max;
  const auto xs = grid.points();

  std::vector<double> rate(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) rate[i] = failure_rate(ev, xs[i]);
  const double r0 = rate.front();

  report.grid_meta = {static_cast<int>(xs.size()), x0, x_max,
                      ev.spec().quantile(0.995), opt.nbu_steps};

  // IFR / DFR.
  const MonotoneScan mono = scan_monotone(rate, opt.const_rel_tol);
  report.is_s_ifr = mono.increasing;
  report.is_s_dfr = mono.decreasing;
  if (!mono.increasing && mono.witness_down > 0) {
    report.witnesses.push_back({"s-ifr", xs[mono.witness_down], std::nullopt});
  }
  if (!mono.decreasing && mono.witness_up > 0) {
    report.witnesses.push_back({"s-dfr", xs[mono.witness_up], std::nullopt});
  }

  // IFRA: monotonicity of the cumulative average (trapezoid accumulation,
  // with the initial [0, x0] chunk approximated by r0 * x0).
  std::vector<double> avg(xs.size());
  double acc = r0 * x0;
  avg[0] = acc / x0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    acc += 0.5 * (rate[i] + rate[i - 1]) * (xs[i] - xs[i - 1]);
    avg[i] = acc / xs[i];
  }
  const MonotoneScan avg_mono = scan_monotone(avg, opt.const_rel_tol);
  report.is_s_ifra = avg_mono.increasing;
  if (!report.is_s_ifra && avg_mono.witness_down > 0) {
    report.witnesses.push_back({"s-ifra", xs[avg_mono.witness_down], std::nullopt});
  }

  // NBU on a uniform triangular grid so x + t lands on grid points.
  {
    const int n = opt.nbu_steps;
    const double h = report.grid_meta.nbu_extent / n;
    std::vector<double> log_tail(2 * n + 1);
    for (int k = 0; k <= 2 * n; ++k) {
      const double tail = ev.tail(k * h);
      log_tail[k] = (tail > 0.0) ? std::log(tail) : -std::numeric_limits<double>::infinity();
    }
    report.is_s_nbu = true;
    for (int i = 1; i <= n && report.is_s_nbu; ++i) {
      for (int j = i; j <= n; ++j) {
        const double lhs = log_tail[i + j];
        const double rhs = log_tail[i] + log_tail[j];
        const double tol = 1e-7 * (1.0 + std::abs(rhs));
        if (lhs > rhs + tol) {
          report.is_s_nbu = false;
          report.witnesses.push_back({"s-nbu", i * h, j * h});
          break;
        }
      }
    }
  }

  // NBUFR / NBAFR against the rate at the origin.
  report.is_s_nbufr = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (r0 > rate[i] + 1e-7 * (std::abs(r0) + std::abs(rate[i]))) {
      report.is_s_nbufr = false;
      report.witnesses.push_back({"s-nbufr", xs[i], std::nullopt});
      break;
    }
  }
  report.is_s_nbafr = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (r0 > avg[i] + 1e-7 * (std::abs(r0) + std::abs(avg[i]))) {
      report.is_s_nbafr = false;
      report.witnesses.push_back({"s-nbafr", xs[i], std::nullopt});
      break;
    }
  }

  return report;
}

bool hierarchy_check(const AgeingReport& r) {
  if (r.is_s_ifr && !r.is_s_ifra) return false;
  if (r.is_s_ifra && !r.is_s_nbu) return false;
  if (r.is_s_nbu && !r.is_s_nbufr) return false;
  if (r.is_s_nbufr && !r.is_s_nbafr) return false;
  return true;
}

}  // namespace stochord
