#include "stochord/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "stochord/errors.hpp"

namespace stochord {

namespace {

// QUADPACK dqk15 nodes/weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
  double kronrod;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double fc = f(c);
  double result_g = fc * kWg[3];
  double result_k = fc * kWgk[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double fsum = f(c - dx) + f(c + dx);
    result_k += kWgk[i] * fsum;
    if (i % 2 == 1) result_g += kWg[i / 2] * fsum;
  }
  result_g *= h;
  result_k *= h;
  return {result_k, std::abs(result_k - result_g)};
}

struct Interval {
  double lo, hi, value, error;
};

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureOptions& opt) {
  if (lo >= hi) return 0.0;
  PanelResult first = gk15(f, lo, hi);
  std::vector<Interval> heap{{lo, hi, first.kronrod, first.error}};
  double total = first.kronrod;
  double total_err = first.error;
  auto worse = [](const Interval& a, const Interval& b) { return a.error < b.error; };

  int subdivisions = 0;
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (++subdivisions > opt.max_subdivisions) {
      throw QuadratureError("quadrature failed to converge within subdivision budget");
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    Interval top = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (top.lo + top.hi);
    if (mid <= top.lo || mid >= top.hi) {
      throw QuadratureError("quadrature interval collapsed below machine precision");
    }
    PanelResult left = gk15(f, top.lo, mid);
    PanelResult right = gk15(f, mid, top.hi);
    total += left.kronrod + right.kronrod - top.value;
    total_err += left.error + right.error - top.error;
    heap.push_back({top.lo, mid, left.kronrod, left.error});
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back({mid, top.hi, right.kronrod, right.error});
    std::push_heap(heap.begin(), heap.end(), worse);
  }
  return total;
}

double solve_monotone(const std::function<double(double)>& g, double lo, double hi,
                      double rel_tol) {
  double flo = g(lo);
  if (flo == 0.0) return lo;
  double fhi = g(hi);
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) {
    throw std::domain_error("solve_monotone: root is not bracketed");
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * std::max(1.0, std::abs(mid))) return mid;
    const double fm = g(mid);
    if (fm == 0.0) return mid;
    if (fm * flo < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace stochord
