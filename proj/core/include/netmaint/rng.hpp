#pragma once

#include <cstdint>
#include <random>

namespace netmaint {

/// Portable random stream: std::mt19937_64 (its output sequence is fixed by
/// the C++ standard) with hand-rolled variate generation so results do not
/// depend on the standard library's distribution implementations.
///
/// - uniform():  ((x >> 11) + 0.5) * 2^-53, strictly inside (0, 1)
/// - normal():   inverse Normal CDF of one uniform() draw
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of independent sub-stream `stream` of `seed`: splitmix64(seed ^ splitmix64(stream)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Standard Normal quantile.
double normal_quantile(double p);

/// Standard Normal CDF.
double normal_cdf(double x);

}  // namespace netmaint
