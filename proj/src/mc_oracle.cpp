#include "stochord/mc_oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace stochord {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Compensated (Kahan) accumulator.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

std::vector<double> sample(const DistributionSpec& spec, const McConfig& cfg) {
  if (cfg.n_samples < 1000) {
    throw std::invalid_argument("McConfig: n_samples must be >= 1000");
  }
  if (cfg.batch == 0) throw std::invalid_argument("McConfig: batch must be positive");
  std::vector<double> draws;
  draws.reserve(cfg.n_samples);
  const std::size_t n_batches = (cfg.n_samples + cfg.batch - 1) / cfg.batch;
  for (std::size_t b = 0; b < n_batches; ++b) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ (b + 1)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t count = std::min(cfg.batch, cfg.n_samples - b * cfg.batch);
    for (std::size_t i = 0; i < count; ++i) {
      double p = unif(rng);
      while (p <= 0.0 || p >= 1.0) p = unif(rng);
      draws.push_back(spec.quantile(p));
    }
  }
  return draws;
}

McEstimate mc_iterated_tail_from_samples(std::span<const double> draws, double moment_sm1,
                                         int s, double x) {
  if (s < 1) throw std::invalid_argument("mc_iterated_tail: s must be >= 1");
  KahanSum sum, sum_sq;
  for (double d : draws) {
    double z = 0.0;
    if (d > x) {
      z = (s == 1) ? 1.0 : std::pow(d - x, s - 1);
      z /= moment_sm1;
    }
    sum.add(z);
    sum_sq.add(z * z);
  }
  const double n = static_cast<double>(draws.size());
  McEstimate out;
  out.estimate = sum.sum / n;
  const double var = std::max(sum_sq.sum / n - out.estimate * out.estimate, 0.0);
  out.std_error = std::sqrt(var / n);
  return out;
}

McEstimate mc_iterated_tail(const DistributionSpec& spec, int s, double x,
                            const McConfig& cfg) {
  const double moment = spec.raw_moment(s - 1);  // throws when undefined
  const std::vector<double> draws = sample(spec, cfg);
  return mc_iterated_tail_from_samples(draws, moment, s, x);
}

}  // namespace stochord
