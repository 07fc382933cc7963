#pragma once

#include <cstdint>
#include <vector>

#include "cwlab/params.hpp"

namespace cwlab {

class DeFinettiMeasure;

/// Law of the spin sum S on {-n, -n+2, ..., n}; index j holds s_j = -n + 2j.
struct MagnetisationPMF {
  std::int64_t n = 0;
  std::vector<double> probs;
  std::vector<double> log_weights;  // unnormalized per-atom log-weights
  double log_norm = 0.0;            // log of the sum of exp(log_weights)

  std::size_t size() const { return probs.size(); }
  std::int64_t value(std::size_t j) const { return -n + 2 * static_cast<std::int64_t>(j); }
  /// Right-continuous cumulative sums, cum[j] = P(S <= s_j).
  std::vector<double> cumulative() const;
};

/// Count coordinate k = (s + n) / 2 and back. Throws DomainError off-lattice.
std::int64_t spin_to_count(std::int64_t s, std::int64_t n);
std::int64_t count_to_spin(std::int64_t k, std::int64_t n);

/// log k! for k = 0..n.
std::vector<double> log_factorials(std::int64_t n);

/// probs[j] proportional to C(n, j) exp(beta s_j^2 / (2n)). Requires mu = 0 and n <= 1e6.
MagnetisationPMF exact_pmf(const ModelParams& params);

/// P(S / rescale <= x).
double exact_cdf(const MagnetisationPMF& pmf, double x, double rescale);

double exact_moment(const MagnetisationPMF& pmf, int k);

/// Law of S obtained by integrating Binomial(n, logistic(x)) against the
/// mixing measure. Throws NumericalError if the raw total mass drifts from 1
/// by 1e-10 or more.
MagnetisationPMF mixture_pmf(const ModelParams& params, const DeFinettiMeasure& mix);

/// Binomial(n, p) law as a MagnetisationPMF on the spin lattice.
MagnetisationPMF binomial_spin_pmf(std::int64_t n, double p);

}  // namespace cwlab
