#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace cwlab {

/// One Curie-Weiss instance: n spins at inverse temperature beta.
///
/// When `gamma` is set the instance sits in the critical window and the
/// effective inverse temperature is 1 - gamma / sqrt(n); `beta` is then
/// ignored. `mu` is an external field, honoured only by the fixed-point chain.
struct ModelParams {
  std::int64_t n = 1;
  double beta = 1.0;
  std::optional<double> gamma;
  double mu = 0.0;

  double effective_beta() const;

  /// Throws ConfigError when the instance is not admissible.
  void validate() const;

  static ModelParams make(std::int64_t n, double beta);
  static ModelParams window(std::int64_t n, double gamma);

  std::string describe() const;
};

bool operator==(const ModelParams& a, const ModelParams& b);

}  // namespace cwlab
