#include "cwlab/rng.hpp"

#include <cmath>

#include "cwlab/error.hpp"

namespace cwlab {

namespace {

constexpr std::int64_t kInversionLimit = 1000;

std::seed_seq make_seq(std::uint64_t seed, std::uint64_t index, std::uint32_t tag) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(index),
                       static_cast<std::uint32_t>(index >> 32), tag};
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
  auto seq = make_seq(seed, 0, 0x5eedu);
  engine_.seed(seq);
}

RngStream::RngStream(std::uint64_t seed, std::seed_seq& seq) : seed_(seed), engine_(seq) {}

RngStream RngStream::split(std::uint64_t index) const {
  auto seq = make_seq(seed_, index, 0x5b11u);
  return RngStream(seed_ ^ (index * 0x9e3779b97f4a7c15ull), seq);
}

double RngStream::uniform() {
  for (;;) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

double RngStream::normal() { return normal_(engine_); }

std::int64_t RngStream::binomial(std::int64_t n, double p) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw DomainError("invalid binomial parameters");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial(n, 1.0 - p);
  if (n > kInversionLimit) {
    std::binomial_distribution<std::int64_t> dist(n, p);
    return dist(engine_);
  }
  const double q = 1.0 - p;
  const double ratio = p / q;
  double prob = std::pow(q, static_cast<double>(n));
  double cum = prob;
  const double u = uniform();
  std::int64_t k = 0;
  while (u > cum && k < n) {
    prob *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
    ++k;
    cum += prob;
  }
  return k;
}

std::int64_t RngStream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("invalid Poisson mean");
  if (mean == 0.0) return 0;
  std::poisson_distribution<std::int64_t> dist(mean);
  return dist(engine_);
}

}  // namespace cwlab
