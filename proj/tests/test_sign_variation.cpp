#include <cmath>
#include <random>

#include "doctest.h"
#include "stochord/errors.hpp"
#include "stochord/sign_variation.hpp"

using namespace stochord;

namespace {

GridConfig linear_grid(double lo, double hi, int n = 512) {
  GridConfig g;
  g.x_min = lo;
  g.x_max = hi;
  g.n_points = n;
  g.spacing = GridConfig::Spacing::linear;
  return g;
}

}  // namespace

TEST_CASE("pattern of simple polynomials") {
  const auto grid = linear_grid(0.0, 4.0);
  CHECK(sign_pattern([](double x) { return x - 2.0; }, grid).to_string() == "-,+");
  CHECK(sign_pattern([](double x) { return 2.0 - x; }, grid).to_string() == "+,-");
  CHECK(sign_pattern([](double x) { return (x - 1.0) * (x - 3.0); }, grid).to_string() ==
        "+,-,+");
  CHECK(sign_pattern([](double x) { return (x - 1.0) * (x - 2.0) * (x - 3.0); }, grid)
            .to_string() == "-,+,-,+");
  CHECK(sign_pattern([](double) { return 1.0; }, grid).to_string() == "+");
}

TEST_CASE("crossings are refined into tight brackets") {
  const auto grid = linear_grid(0.0, 4.0);
  const auto p = sign_pattern([](double x) { return (x - 1.0) * (x - 3.0); }, grid);
  REQUIRE(p.crossings.size() == 2);
  CHECK(p.crossings[0].lo <= 1.0);
  CHECK(p.crossings[0].hi >= 1.0);
  CHECK(p.crossings[0].hi - p.crossings[0].lo <= 1e-7 * 4.0);
  CHECK(p.crossings[1].lo <= 3.0);
  CHECK(p.crossings[1].hi >= 3.0);
}

TEST_CASE("zero band absorbs noise and flags identically-zero input") {
  const auto grid = linear_grid(0.0, 1.0);
  const auto z = sign_pattern([](double x) { return 1e-14 * std::sin(40.0 * x); }, grid);
  CHECK(z.identically_zero());
  CHECK(z.to_string() == "0");
  // a tiny ripple on top of a clear signal must not create sign changes
  const auto p =
      sign_pattern([](double x) { return (x - 0.5) + 1e-13 * std::sin(300.0 * x); }, grid);
  CHECK(p.to_string() == "-,+");
}

TEST_CASE("pattern string round-trips through parse") {
  for (const char* s : {"+", "-", "+,-", "-,+,-,+"}) {
    CHECK(SignPattern::parse(s).to_string() == s);
  }
}

TEST_CASE("admissible pattern sets for convexity and concavity") {
  auto pat = [](const char* s) { return SignPattern::parse(s); };
  CHECK(pattern_admissible_for_convexity(SignPattern{}));  // identically zero
  for (const char* s : {"+", "-", "+,-", "-,+", "+,-,+"}) {
    CHECK(pattern_admissible_for_convexity(pat(s)));
  }
  for (const char* s : {"-,+,-", "+,-,+,-", "-,+,-,+"}) {
    CHECK_FALSE(pattern_admissible_for_convexity(pat(s)));
  }
  for (const char* s : {"+", "-", "+,-", "-,+", "-,+,-"}) {
    CHECK(pattern_admissible_for_concavity(pat(s)));
  }
  for (const char* s : {"+,-,+", "-,+,-,+"}) {
    CHECK_FALSE(pattern_admissible_for_concavity(pat(s)));
  }
}

TEST_CASE("log transform preserves the sign pattern of a difference") {
  // random positive function pairs: exp of independent random quadratics
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  const auto grid = linear_grid(0.0, 3.0, 256);
  for (int trial = 0; trial < 100; ++trial) {
    const double a0 = coef(rng), a1 = coef(rng), a2 = coef(rng);
    const double b0 = coef(rng), b1 = coef(rng), b2 = coef(rng);
    auto fa = [&](double x) { return std::exp(a0 + a1 * x + a2 * x * x); };
    auto fb = [&](double x) { return std::exp(b0 + b1 * x + b2 * x * x); };
    const auto direct = sign_pattern([&](double x) { return fa(x) - fb(x); }, grid);
    const auto logged = log_sign_transform(fa, fb, grid);
    CHECK(direct.to_string() == logged.to_string());
  }
}

TEST_CASE("log transform rejects nonpositive samples with the abscissa") {
  const auto grid = linear_grid(0.0, 2.0, 64);
  CHECK_THROWS_AS(log_sign_transform([](double x) { return 1.0 - x; },
                                     [](double) { return 1.0; }, grid),
                  NonpositiveSampleError);
  try {
    log_sign_transform([](double x) { return 1.0 - x; }, [](double) { return 1.0; }, grid);
  } catch (const NonpositiveSampleError& e) {
    CHECK(e.abscissa() >= 1.0);
  }
}

TEST_CASE("variation-diminishing suffix sets for tail integration") {
  using Signs = std::vector<std::vector<int>>;
  CHECK(final_part_patterns({-1, +1}) == Signs{{-1, +1}, {+1}});
  CHECK(final_part_patterns({+1, -1}) == Signs{{+1, -1}, {-1}});
  CHECK(final_part_patterns({+1, -1, +1}) == Signs{{+1, -1, +1}, {-1, +1}, {+1}});
  CHECK(final_part_patterns({-1, +1, -1, +1}) ==
        Signs{{-1, +1, -1, +1}, {+1, -1, +1}, {-1, +1}, {+1}});
  CHECK_THROWS_AS(final_part_patterns({+1, +1}), std::invalid_argument);
  CHECK_THROWS_AS(final_part_patterns({-1, +1, -1}), std::invalid_argument);
}

TEST_CASE("integration of a piecewise function lands in a suffix pattern") {
  // f has pattern +,-,+ on [0, 6]; g(x) = integral_x^6 f must realize one of
  // the suffixes of that pattern.
  auto f = [](double x) { return (x - 1.0) * (x - 3.0) * std::exp(-x); };
  auto g = [&](double x) {
    double acc = 0.0;
    const int n = 4000;
    const double hi = 6.0;
    for (int i = 0; i < n; ++i) {
      const double t0 = x + (hi - x) * i / n;
      const double t1 = x + (hi - x) * (i + 1) / n;
      acc += 0.5 * (f(t0) + f(t1)) * (t1 - t0);
    }
    return acc;
  };
  const auto pf = sign_pattern(f, linear_grid(0.0, 5.5));
  REQUIRE(pf.to_string() == "+,-,+");
  const auto pg = sign_pattern(g, linear_grid(0.0, 5.5));
  bool matched = false;
  for (const auto& suffix : final_part_patterns(pf.signs)) {
    matched = matched || (pg.signs == suffix);
  }
  CHECK(matched);
}

TEST_CASE("log-linear spacing covers small abscissas") {
  GridConfig g;
  g.x_min = 0.0;
  g.x_max = 1e10;
  g.n_points = 512;
  const auto pts = g.points();
  REQUIRE(!pts.empty());
  CHECK(pts.front() == 0.0);
  CHECK(pts.back() == doctest::Approx(1e10));
  int below_one = 0;
  for (double x : pts) below_one += (x > 0.0 && x < 1.0);
  CHECK(below_one > 30);  // a linear grid would have none
}
