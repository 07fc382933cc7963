#include "cwlab/exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cwlab/definetti.hpp"
#include "cwlab/error.hpp"
#include "cwlab/functions.hpp"

namespace cwlab {

namespace {

constexpr std::int64_t kMaxExactN = 1000000;

void normalize_from_logs(MagnetisationPMF& pmf) {
  const double top = *std::max_element(pmf.log_weights.begin(), pmf.log_weights.end());
  double sum = 0.0;
  for (double lw : pmf.log_weights) sum += std::exp(lw - top);
  pmf.log_norm = top + std::log(sum);
  pmf.probs.resize(pmf.log_weights.size());
  for (std::size_t j = 0; j < pmf.log_weights.size(); ++j)
    pmf.probs[j] = std::exp(pmf.log_weights[j] - top) / sum;
  // Second pass with a compensated sum removes the rounding left by exp().
  double total = 0.0, carry = 0.0;
  for (double p : pmf.probs) {
    const double t = total + p;
    carry += std::fabs(total) >= std::fabs(p) ? (total - t) + p : (p - t) + total;
    total = t;
  }
  total += carry;
  for (double& p : pmf.probs) p /= total;
}

}  // namespace

std::vector<double> MagnetisationPMF::cumulative() const {
  std::vector<double> c(probs.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    acc += probs[j];
    c[j] = acc;
  }
  if (!c.empty()) c.back() = 1.0;
  return c;
}

std::int64_t spin_to_count(std::int64_t s, std::int64_t n) {
  if (s < -n || s > n || (s + n) % 2 != 0)
    throw DomainError("spin sum " + std::to_string(s) + " is not on the lattice for n=" +
                      std::to_string(n));
  return (s + n) / 2;
}

std::int64_t count_to_spin(std::int64_t k, std::int64_t n) {
  if (k < 0 || k > n) throw DomainError("count " + std::to_string(k) + " outside [0, n]");
  return 2 * k - n;
}

std::vector<double> log_factorials(std::int64_t n) {
  std::vector<double> lf(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) lf[k] = std::lgamma(static_cast<double>(k) + 1.0);
  return lf;
}

MagnetisationPMF exact_pmf(const ModelParams& params) {
  params.validate();
  if (params.n > kMaxExactN) throw ConfigError("exact_pmf supports n <= 1e6");
  if (params.mu != 0.0) throw ConfigError("exact_pmf requires mu = 0");
  const std::int64_t n = params.n;
  const double beta = params.effective_beta();
  const auto lf = log_factorials(n);
  MagnetisationPMF pmf;
  pmf.n = n;
  pmf.log_weights.resize(static_cast<std::size_t>(n) + 1);
  const double dn = static_cast<double>(n);
  for (std::int64_t j = 0; j <= n / 2; ++j) {
    const double s = static_cast<double>(-n + 2 * j);
    const double lw = lf[n] - lf[j] - lf[n - j] - dn * std::log(2.0) + beta * s * s / (2.0 * dn);
    pmf.log_weights[j] = lw;
    pmf.log_weights[n - j] = lw;
  }
  normalize_from_logs(pmf);
  return pmf;
}

double exact_cdf(const MagnetisationPMF& pmf, double x, double rescale) {
  if (!(rescale > 0.0)) throw DomainError("rescale must be positive");
  double acc = 0.0;
  for (std::size_t j = 0; j < pmf.size(); ++j) {
    if (static_cast<double>(pmf.value(j)) / rescale > x) break;
    acc += pmf.probs[j];
  }
  return std::min(acc, 1.0);
}

double exact_moment(const MagnetisationPMF& pmf, int k) {
  if (k < 0) throw DomainError("moment order must be nonnegative");
  if (k == 0) return 1.0;
  if (k % 2 == 1) {
    // Pair symmetric atoms so odd moments of a symmetric law cancel exactly.
    double s = 0.0;
    for (std::size_t j = 0, m = pmf.size() - 1; j < m - j; ++j)
      s += std::pow(static_cast<double>(pmf.value(m - j)), k) * pmf.probs[m - j] -
           std::pow(static_cast<double>(-pmf.value(j)), k) * pmf.probs[j];
    return s;
  }
  double s = 0.0;
  for (std::size_t j = 0; j < pmf.size(); ++j)
    s += std::pow(static_cast<double>(pmf.value(j)), k) * pmf.probs[j];
  return s;
}

MagnetisationPMF mixture_pmf(const ModelParams& params, const DeFinettiMeasure& mix) {
  params.validate();
  if (!(mix.params() == params)) throw ConfigError("mixing measure was built for other params");
  const std::int64_t n = params.n;
  const auto lf = log_factorials(n);
  const auto x = mix.nodes();
  const auto w = mix.node_weights();
  std::vector<double> lp(x.size()), lq(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lp[i] = log_logistic(x[i]);
    lq[i] = log_logistic(-x[i]);
  }
  MagnetisationPMF pmf;
  pmf.n = n;
  pmf.probs.assign(static_cast<std::size_t>(n) + 1, 0.0);
  pmf.log_weights.resize(pmf.probs.size());
  double total = 0.0;
  for (std::int64_t j = 0; j <= n; ++j) {
    const double lc = lf[n] - lf[j] - lf[n - j];
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      s += w[i] * std::exp(lc + static_cast<double>(j) * lp[i] + static_cast<double>(n - j) * lq[i]);
    pmf.probs[j] = s;
    total += s;
  }
  if (!(std::fabs(total - 1.0) < 1e-10))
    throw NumericalError("mixture mass drifted from 1 by " + std::to_string(total - 1.0) +
                         " for " + params.describe());
  for (std::size_t j = 0; j < pmf.probs.size(); ++j) {
    pmf.probs[j] /= total;
    pmf.log_weights[j] = std::log(pmf.probs[j]);
  }
  pmf.log_norm = 0.0;
  return pmf;
}

MagnetisationPMF binomial_spin_pmf(std::int64_t n, double p) {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("binomial parameter must lie in (0, 1)");
  const auto lf = log_factorials(n);
  MagnetisationPMF pmf;
  pmf.n = n;
  pmf.log_weights.resize(static_cast<std::size_t>(n) + 1);
  const double lp = std::log(p), lq = std::log1p(-p);
  for (std::int64_t j = 0; j <= n; ++j)
    pmf.log_weights[j] = lf[n] - lf[j] - lf[n - j] + static_cast<double>(j) * lp +
                         static_cast<double>(n - j) * lq;
  normalize_from_logs(pmf);
  return pmf;
}

}  // namespace cwlab
