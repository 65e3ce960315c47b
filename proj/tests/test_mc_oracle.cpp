#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "stochord/iterated_tail.hpp"
#include "stochord/mc_oracle.hpp"

using namespace stochord;

TEST_CASE("sampling is deterministic bit for bit under a fixed seed") {
  McConfig cfg;
  cfg.n_samples = 50'000;
  const auto a = sample(DistributionSpec::gamma(2.0, 1.0), cfg);
  const auto b = sample(DistributionSpec::gamma(2.0, 1.0), cfg);
  REQUIRE(a.size() == cfg.n_samples);
  CHECK(a == b);
  cfg.seed += 1;
  const auto c = sample(DistributionSpec::gamma(2.0, 1.0), cfg);
  CHECK(a != c);
}

TEST_CASE("estimates are deterministic too") {
  McConfig cfg;
  cfg.n_samples = 50'000;
  const auto e1 = mc_iterated_tail(DistributionSpec::weibull(2.0, 1.0), 2, 0.7, cfg);
  const auto e2 = mc_iterated_tail(DistributionSpec::weibull(2.0, 1.0), 2, 0.7, cfg);
  CHECK(e1.estimate == e2.estimate);
  CHECK(e1.std_error == e2.std_error);
}

TEST_CASE("sample moments match the closed moments") {
  McConfig cfg;
  cfg.n_samples = 400'000;
  for (const auto& spec :
       {DistributionSpec::exponential(1.0), DistributionSpec::gamma(2.0, 1.0),
        DistributionSpec::weibull(0.6, 1.5), DistributionSpec::inverse_gamma(6.0, 2.0)}) {
    const auto draws = sample(spec, cfg);
    double mean = 0.0;
    for (double d : draws) mean += d;
    mean /= static_cast<double>(draws.size());
    double var = 0.0;
    for (double d : draws) var += (d - mean) * (d - mean);
    var /= static_cast<double>(draws.size() - 1);
    const double se = std::sqrt(var / static_cast<double>(draws.size()));
    CHECK(std::abs(mean - spec.raw_moment(1)) <= 4.0 * se);
  }
}

TEST_CASE("estimator agrees with closed tails within stated errors") {
  McConfig cfg;
  cfg.n_samples = 300'000;
  for (int s : {1, 2, 3}) {
    const auto spec = DistributionSpec::gamma(2.0, 1.0);
    IteratedTailEvaluator ev(spec, s);
    const auto draws = sample(spec, cfg);
    for (double x : {0.2, 1.0, 2.5, 5.0}) {
      const auto est = mc_iterated_tail_from_samples(draws, spec.raw_moment(s - 1), s, x);
      CHECK(std::abs(est.estimate - ev.tail(x)) <= 4.0 * est.std_error);
      CHECK(est.std_error > 0.0);
    }
  }
}

TEST_CASE("survival estimate at the origin is exactly one") {
  McConfig cfg;
  cfg.n_samples = 10'000;
  const auto est = mc_iterated_tail(DistributionSpec::exponential(1.0), 1, 0.0, cfg);
  CHECK(est.estimate == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tiny sample requests are rejected") {
  McConfig cfg;
  cfg.n_samples = 10;
  CHECK_THROWS_AS(sample(DistributionSpec::exponential(1.0), cfg), std::invalid_argument);
}
