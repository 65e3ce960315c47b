#ifndef STOCHORD_MC_ORACLE_HPP
#define STOCHORD_MC_ORACLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "stochord/distributions.hpp"

namespace stochord {

struct McConfig {
  std::size_t n_samples = 1'000'000;
  std::uint64_t seed = 0x5743'4f52'4448'4f54ULL;
  std::size_t batch = 65'536;
};

/// Inverse-transform i.i.d. draws, deterministic given the seed. Per-batch
/// sub-seeds are derived from the batch index, so the stream is identical
/// however the batches are scheduled.
std::vector<double> sample(const DistributionSpec& spec, const McConfig& cfg);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of the s-iterated tail through the partial-moment
/// representation: sample mean of (X - x)_+^(s-1) / E X^(s-1), with E X^(s-1)
/// taken exactly from raw_moment. Delta-method standard error.
McEstimate mc_iterated_tail(const DistributionSpec& spec, int s, double x,
                            const McConfig& cfg);

/// Same estimator over a pre-drawn sample (lets one stream serve many x).
McEstimate mc_iterated_tail_from_samples(std::span<const double> draws, double moment_sm1,
                                         int s, double x);

}  // namespace stochord

#endif  // STOCHORD_MC_ORACLE_HPP
