#include "stochord/sign_variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stochord/errors.hpp"

namespace stochord {

std::vector<double> GridConfig::points() const {
  if (!(x_min < x_max)) throw std::invalid_argument("GridConfig: x_min must be < x_max");
  if (n_points < 16) throw std::invalid_argument("GridConfig: n_points must be >= 16");
  std::vector<double> xs;
  xs.reserve(n_points);
  if (spacing == Spacing::linear) {
    for (int i = 0; i < n_points; ++i) {
      xs.push_back(x_min + (x_max - x_min) * i / (n_points - 1));
    }
    return xs;
  }
  // Half the points log-spaced from a tiny positive offset, half linear.
  const int n_log = n_points / 2;
  const int n_lin = n_points - n_log;
  const double lo = std::max(x_min, x_max * 1e-12);
  if (x_min < lo) xs.push_back(x_min);
  const double llo = std::log(lo);
  const double lhi = std::log(x_max);
  for (int i = 0; i < n_log; ++i) {
    xs.push_back(std::exp(llo + (lhi - llo) * i / (n_log - 1)));
  }
  for (int i = 0; i < n_lin; ++i) {
    xs.push_back(x_min + (x_max - x_min) * i / (n_lin - 1));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::string SignPattern::to_string() const {
  if (signs.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (i) out += ',';
    out += (signs[i] > 0) ? '+' : '-';
  }
  return out;
}

SignPattern SignPattern::parse(const std::string& text) {
  SignPattern p;
  if (text == "0") return p;
  for (char c : text) {
    if (c == '+') {
      p.signs.push_back(+1);
    } else if (c == '-') {
      p.signs.push_back(-1);
    } else if (c != ',' && c != ' ') {
      throw std::invalid_argument("bad sign pattern: " + text);
    }
  }
  for (std::size_t i = 1; i < p.signs.size(); ++i) {
    if (p.signs[i] == p.signs[i - 1]) {
      throw std::invalid_argument("sign pattern has uncollapsed run: " + text);
    }
  }
  return p;
}

namespace {

// Bisection on the raw sign of fn between two out-of-band samples.
Crossing refine_crossing(const std::function<double(double)>& fn, double lo, double hi,
                         double v_lo, double refine_tol) {
  const int sign_lo = (v_lo > 0.0) ? +1 : -1;
  for (int i = 0; i < 200; ++i) {
    if (hi - lo <= refine_tol * std::max(1.0, std::abs(hi))) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double vm = fn(mid);
    const int sm = (vm > 0.0) ? +1 : (vm < 0.0 ? -1 : 0);
    if (sm == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace

SignPattern sign_pattern(const std::function<double(double)>& fn, const GridConfig& grid) {
  const std::vector<double> xs = grid.points();
  std::vector<double> vs(xs.size());
  double max_abs = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    vs[i] = fn(xs[i]);
    if (std::isfinite(vs[i])) max_abs = std::max(max_abs, std::abs(vs[i]));
  }

  SignPattern p;
  p.band = grid.atol + grid.rtol * max_abs;

  int last_sign = 0;
  double last_x = 0.0;
  double last_v = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(std::abs(vs[i]) > p.band)) continue;  // in band (or NaN): no sign information
    const int s = (vs[i] > 0.0) ? +1 : -1;
    if (s != last_sign) {
      if (last_sign != 0) {
        p.crossings.push_back(refine_crossing(fn, last_x, xs[i], last_v, grid.refine_tol));
      }
      p.signs.push_back(s);
      last_sign = s;
    }
    last_x = xs[i];
    last_v = vs[i];
  }
  return p;
}

bool pattern_admissible_for_convexity(const SignPattern& p) {
  const int n = static_cast<int>(p.signs.size());
  if (n <= 2) return true;  // identically zero, constant sign, or one change
  if (n == 3) return p.signs[0] > 0;  // two changes must be "+,-,+"
  return false;
}

bool pattern_admissible_for_concavity(const SignPattern& p) {
  const int n = static_cast<int>(p.signs.size());
  if (n <= 2) return true;
  if (n == 3) return p.signs[0] < 0;
  return false;
}

SignPattern log_sign_transform(const std::function<double(double)>& fnA,
                               const std::function<double(double)>& fnB,
                               const GridConfig& grid) {
  auto diff = [&](double x) {
    const double a = fnA(x);
    const double b = fnB(x);
    if (!(a > 0.0)) {
      throw NonpositiveSampleError(x, "log_sign_transform: first function nonpositive at x = " +
                                          std::to_string(x));
    }
    if (!(b > 0.0)) {
      throw NonpositiveSampleError(x, "log_sign_transform: second function nonpositive at x = " +
                                          std::to_string(x));
    }
    return std::log(a) - std::log(b);
  };
  return sign_pattern(diff, grid);
}

std::vector<std::vector<int>> final_part_patterns(const std::vector<int>& signs) {
  static const std::vector<std::vector<int>> supported = {
      {-1, +1}, {+1, -1}, {+1, -1, +1}, {-1, +1, -1, +1}};
  if (std::find(supported.begin(), supported.end(), signs) == supported.end()) {
    throw std::invalid_argument("final_part_patterns: unsupported sign variation");
  }
  std::vector<std::vector<int>> suffixes;
  for (std::size_t start = 0; start < signs.size(); ++start) {
    suffixes.emplace_back(signs.begin() + start, signs.end());
  }
  return suffixes;
}

}  // namespace stochord
