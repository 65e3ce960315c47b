#include <cmath>

#include "doctest.h"
#include "stochord/errors.hpp"
#include "stochord/iterated_tail.hpp"
#include "stochord/mc_oracle.hpp"

using namespace stochord;

TEST_CASE("level conventions: density at 0, survival at 1, unit left of origin") {
  IteratedTailEvaluator ev(DistributionSpec::gamma(2.0, 1.0), 3);
  CHECK(ev.tail_at_level(0, 1.0) ==
        doctest::Approx(DistributionSpec::gamma(2.0, 1.0).pdf(1.0)).epsilon(1e-13));
  CHECK(ev.tail_at_level(1, 1.0) ==
        doctest::Approx(DistributionSpec::gamma(2.0, 1.0).survival(1.0)).epsilon(1e-13));
  for (int level = 1; level <= 3; ++level) {
    CHECK(ev.tail_at_level(level, -0.5) == 1.0);
    CHECK(ev.tail_at_level(level, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("exponential is a fixed point of tail iteration") {
  IteratedTailEvaluator ev(DistributionSpec::exponential(0.5), 4);
  for (int level = 1; level <= 4; ++level) {
    for (double x : {0.1, 1.0, 3.0}) {
      CHECK(ev.tail_at_level(level, x) == doctest::Approx(std::exp(-2.0 * x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("gamma iterated tails against frozen quadrature references") {
  IteratedTailEvaluator ev2(DistributionSpec::gamma(2.0, 1.0), 2);
  CHECK(ev2.tail(0.5) == doctest::Approx(0.75816332464079178).epsilon(1e-10));
  CHECK(ev2.tail(1.0) == doctest::Approx(0.55181916175716348).epsilon(1e-10));
  CHECK(ev2.tail(2.5) == doctest::Approx(0.18469124690377229).epsilon(1e-10));
  IteratedTailEvaluator ev3(DistributionSpec::gamma(2.0, 1.0), 3);
  CHECK(ev3.tail(0.5) == doctest::Approx(0.70761910299807233).epsilon(1e-10));
  CHECK(ev3.tail(1.0) == doctest::Approx(0.4905059215619231).epsilon(1e-10));
  CHECK(ev3.tail(2.5) == doctest::Approx(0.15048916414381446).epsilon(1e-10));
  IteratedTailEvaluator evf(DistributionSpec::gamma(0.7, 2.0), 2);
  CHECK(evf.tail(0.3) == doctest::Approx(0.82109598580169265).epsilon(1e-10));
  CHECK(evf.tail(1.7) == doctest::Approx(0.35856360663963885).epsilon(1e-10));
}

TEST_CASE("weibull iterated tails against frozen quadrature references") {
  IteratedTailEvaluator ev(DistributionSpec::weibull(2.0, 1.0), 2);
  CHECK(ev.tail(0.4) == doctest::Approx(0.57160764495333154).epsilon(1e-10));
  CHECK(ev.tail(1.3) == doctest::Approx(0.065992055059347563).epsilon(1e-10));
  IteratedTailEvaluator evh(DistributionSpec::weibull(0.6, 1.5), 3);
  CHECK(evh.tail(0.8) == doctest::Approx(0.84906100490916172).epsilon(1e-9));
  CHECK(evh.tail(3.0) == doctest::Approx(0.57143005946012963).epsilon(1e-9));
}

TEST_CASE("inverse gamma iterated tails against frozen quadrature references") {
  IteratedTailEvaluator ev(DistributionSpec::inverse_gamma(3.0, 2.0), 2);
  CHECK(ev.tail(0.5) == doctest::Approx(0.52747345833310127).epsilon(1e-7));
  CHECK(ev.tail(2.0) == doctest::Approx(0.10363832351432696).epsilon(1e-7));
}

TEST_CASE("mu ladder: unit head, frozen gamma values, moment identity") {
  IteratedTailEvaluator ev(DistributionSpec::gamma(2.0, 1.0), 5);
  const auto& mu = ev.mu_ladder();
  REQUIRE(mu.size() == 5);
  CHECK(mu[0] == 1.0);
  CHECK(mu[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mu[2] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(mu[3] == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(mu[4] == doctest::Approx(1.25).epsilon(1e-12));
  // E X^(s-1) = (s-1)! * prod_j mu~_j
  double prod = 1.0;
  for (double m : mu) prod *= m;
  CHECK(ev.spec().raw_moment(4) == doctest::Approx(24.0 * prod).epsilon(1e-12));
}

TEST_CASE("moment identity across families and levels") {
  for (const auto& spec :
       {DistributionSpec::exponential(2.0), DistributionSpec::gamma(3.5, 0.5),
        DistributionSpec::weibull(0.6, 1.0), DistributionSpec::weibull(2.0, 1.5),
        DistributionSpec::inverse_gamma(6.0, 1.0)}) {
    for (int s = 2; s <= 5; ++s) {
      IteratedTailEvaluator ev(spec, s);
      double prod = 1.0;
      for (double m : ev.mu_ladder()) prod *= m;
      const double factorial = std::tgamma(static_cast<double>(s));
      CHECK(spec.raw_moment(s - 1) == doctest::Approx(factorial * prod).epsilon(1e-8));
    }
  }
}

TEST_CASE("closed representations agree with direct quadrature") {
  for (const auto& spec :
       {DistributionSpec::gamma(2.0, 1.0), DistributionSpec::gamma(0.7, 2.0),
        DistributionSpec::weibull(2.0, 1.5), DistributionSpec::weibull(0.6, 1.0)}) {
    for (int s : {2, 3, 4}) {
      IteratedTailEvaluator ev(spec, s);
      for (double p : {0.05, 0.4, 0.8, 0.99}) {
        const double x = spec.quantile(p);
        CHECK(ev.tail(x) == doctest::Approx(ev.tail_via_quadrature(x)).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("k-fold recursion route agrees with the closed route") {
  IteratedTailEvaluator ev(DistributionSpec::gamma(3.0, 1.0), 3);
  for (int k = 1; k <= 3; ++k) {
    for (double x : {0.3, 1.0, 2.5, 6.0}) {
      CHECK(ev.tail_via_recursion(x, k) == doctest::Approx(ev.tail(x)).epsilon(1e-7));
    }
  }
  IteratedTailEvaluator evw(DistributionSpec::weibull(1.5, 1.0), 4);
  for (int k = 1; k <= 4; ++k) {
    CHECK(evw.tail_via_recursion(0.9, k) == doctest::Approx(evw.tail(0.9)).epsilon(1e-7));
  }
}

TEST_CASE("tails are decreasing and bounded by [0, 1]") {
  for (const auto& spec :
       {DistributionSpec::gamma(5.0, 1.0), DistributionSpec::weibull(3.0, 2.0),
        DistributionSpec::inverse_gamma(4.0, 2.0)}) {
    IteratedTailEvaluator ev(spec, 3);
    double prev = 1.0;
    for (int i = 0; i <= 40; ++i) {
      const double x = spec.quantile(1.0 - 1e-6) * i / 40.0;
      const double t = ev.tail(x);
      CHECK(t <= prev + 1e-12);
      CHECK(t >= 0.0);
      CHECK(t <= 1.0 + 1e-12);
      prev = t;
    }
  }
}

TEST_CASE("scale equivariance: tail of cX at cx equals tail of X at x") {
  for (const auto& spec :
       {DistributionSpec::gamma(2.0, 1.0), DistributionSpec::weibull(0.6, 1.5),
        DistributionSpec::inverse_gamma(5.0, 1.0)}) {
    for (double c : {0.5, 2.0, 7.0}) {
      IteratedTailEvaluator ev(spec, 3);
      IteratedTailEvaluator evc(spec.scaled(c), 3);
      for (double x : {0.2, 1.0, 3.0}) {
        CHECK(evc.tail(c * x) == doctest::Approx(ev.tail(x)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("undefined moments are rejected with the failing order") {
  CHECK_THROWS_AS(IteratedTailEvaluator(DistributionSpec::inverse_gamma(2.0, 1.0), 3),
                  MomentUndefinedError);
  try {
    IteratedTailEvaluator ev(DistributionSpec::inverse_gamma(2.0, 1.0), 4);
  } catch (const MomentUndefinedError& e) {
    CHECK(e.order() >= 2);
  }
  // s = 2 needs only the mean, which exists for shape > 1
  CHECK_NOTHROW(IteratedTailEvaluator(DistributionSpec::inverse_gamma(2.0, 1.0), 2));
}

TEST_CASE("monte carlo cross-check of tails at several levels") {
  McConfig cfg;
  cfg.n_samples = 200'000;
  for (const auto& spec :
       {DistributionSpec::gamma(2.0, 1.0), DistributionSpec::weibull(2.0, 1.0)}) {
    for (int s : {1, 2, 3}) {
      IteratedTailEvaluator ev(spec, s);
      for (double x : {0.5, 1.5}) {
        const McEstimate est = mc_iterated_tail(spec, s, x, cfg);
        CHECK(std::abs(est.estimate - ev.tail(x)) <= 4.0 * est.std_error);
      }
    }
  }
}
