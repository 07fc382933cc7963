#pragma once

#include <cstdint>
#include <random>

namespace cwlab {

/// Seeded 64-bit Mersenne Twister with deterministic indexed splitting.
/// Not thread-safe; give each thread its own split stream.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  /// Independent child stream derived from (seed, index).
  RngStream split(std::uint64_t index) const;

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double normal();
  /// Binomial(n, p): sequential inversion for n <= 1000, library sampler above.
  std::int64_t binomial(std::int64_t n, double p);
  std::int64_t poisson(double mean);

  std::uint64_t next_u64() { return engine_(); }

 private:
  RngStream(std::uint64_t seed, std::seed_seq& seq);

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace cwlab
