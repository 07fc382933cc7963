#pragma once

#include <cstdint>
#include <vector>

#include "cwlab/definetti.hpp"
#include "cwlab/limit_law.hpp"
#include "cwlab/params.hpp"
#include "cwlab/rng.hpp"

namespace cwlab {

/// T = tanh(X) with X drawn from the mixing measure by inverse CDF.
double sample_T(const DeFinettiMeasure& mix, RngStream& rng);

struct SpinSample {
  std::vector<int> spins;  // each +1 or -1
  std::int64_t magnetisation = 0;
};

/// Spins 2*1{U_k < P} - 1 with P = (1 + T) / 2 shared by all k.
SpinSample sample_exact_spins(const ModelParams& params, const DeFinettiMeasure& mix,
                              RngStream& rng);
/// Same law as sample_exact_spins(...).magnetisation via one binomial draw.
std::int64_t sample_magnetisation(const ModelParams& params, const DeFinettiMeasure& mix,
                                  RngStream& rng);

/// sqrt(n) G sqrt(1 - T^2) + n T.
double sample_surrogate(const ModelParams& params, const DeFinettiMeasure& mix, RngStream& rng);

/// P(surrogate / rescale <= x), integrating G exactly and T by quadrature.
double surrogate_cdf(const ModelParams& params, const DeFinettiMeasure& mix, double x,
                     double rescale);

/// Poisson(n P) with P = (1 + T) / 2.
std::int64_t sample_poisson_surrogate(const ModelParams& params, const DeFinettiMeasure& mix,
                                      RngStream& rng);

struct CoupledPair {
  double p = 0.5;
  double q = 0.5;
  std::int64_t s_p = 0;
  std::int64_t s_q = 0;
  std::int64_t shared_uniform_count = 0;
};

/// S_n(p), S_n(q) built from the same n uniforms.
CoupledPair sample_coupled_pair(double p, double q, std::int64_t n, RngStream& rng);

inline std::int64_t default_burn_in(std::int64_t n) { return 10 * n; }

/// M_{k+1} = 2 Bin(n, logistic(sqrt(beta/n) G_k + mu + beta M_k / n)) - n,
/// M_0 = 2 Bin(n, 1/2) - n. Returns the `steps` states after `burn_in`.
std::vector<std::int64_t> fixed_point_chain(const ModelParams& params, std::int64_t steps,
                                            std::int64_t burn_in, RngStream& rng);

struct FPair {
  double F = 0.0;        // n^{1/4} T
  double F_prime = 0.0;  // F - G n^{-1/4} 1{|G| <= sqrt(n)}
  double G = 0.0;
  double P = 0.5;        // (1 + F' n^{-1/4}) / 2
  double Q = 0.5;        // (1 + F n^{-1/4}) / 2
};

/// Requires beta = 1 or a window instance; throws RegimeMismatch otherwise,
/// InternalError if P leaves (0, 1).
FPair sample_coupled_F_pair(const ModelParams& params, const DeFinettiMeasure& mix,
                            RngStream& rng);

/// Draw from a limit law by inverse CDF.
double sample_limit(const LimitLaw& law, RngStream& rng);

}  // namespace cwlab
