#include "cwlab/samplers.hpp"

#include <algorithm>
#include <cmath>

#include "cwlab/error.hpp"
#include "cwlab/functions.hpp"

namespace cwlab {

double sample_T(const DeFinettiMeasure& mix, RngStream& rng) {
  return std::tanh(mix.quantile(rng.uniform()));
}

SpinSample sample_exact_spins(const ModelParams& params, const DeFinettiMeasure& mix,
                              RngStream& rng) {
  const double p = 0.5 * (1.0 + sample_T(mix, rng));
  SpinSample out;
  out.spins.resize(static_cast<std::size_t>(params.n));
  for (auto& s : out.spins) {
    s = rng.uniform() < p ? 1 : -1;
    out.magnetisation += s;
  }
  return out;
}

std::int64_t sample_magnetisation(const ModelParams& params, const DeFinettiMeasure& mix,
                                  RngStream& rng) {
  const double p = logistic(mix.quantile(rng.uniform()));
  return 2 * rng.binomial(params.n, p) - params.n;
}

double sample_surrogate(const ModelParams& params, const DeFinettiMeasure& mix, RngStream& rng) {
  const double n = static_cast<double>(params.n);
  const double t = sample_T(mix, rng);
  const double g = rng.normal();
  return std::sqrt(n) * g * std::sqrt(1.0 - t * t) + n * t;
}

double surrogate_cdf(const ModelParams& params, const DeFinettiMeasure& mix, double x,
                     double rescale) {
  if (!(rescale > 0.0)) throw DomainError("rescale must be positive");
  const double rn = std::sqrt(static_cast<double>(params.n));
  const double y = x * rescale / rn;
  // Given X = u, the surrogate is Gaussian with mean n tanh(u) and sd sqrt(n) / cosh(u).
  const double v = mix.expect([&](double u) { return normal_cdf((y - rn * std::tanh(u)) * std::cosh(u)); });
  if (!std::isfinite(v)) throw NumericalError("surrogate cdf is not finite");
  return std::clamp(v, 0.0, 1.0);
}

std::int64_t sample_poisson_surrogate(const ModelParams& params, const DeFinettiMeasure& mix,
                                      RngStream& rng) {
  const double p = 0.5 * (1.0 + sample_T(mix, rng));
  return rng.poisson(static_cast<double>(params.n) * p);
}

CoupledPair sample_coupled_pair(double p, double q, std::int64_t n, RngStream& rng) {
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0))
    throw DomainError("coupled pair needs p, q in (0, 1)");
  if (n < 1) throw ConfigError("n must be >= 1");
  CoupledPair c;
  c.p = p;
  c.q = q;
  c.shared_uniform_count = n;
  for (std::int64_t k = 0; k < n; ++k) {
    const double u = rng.uniform();
    c.s_p += u < p ? 1 : -1;
    c.s_q += u < q ? 1 : -1;
  }
  return c;
}

std::vector<std::int64_t> fixed_point_chain(const ModelParams& params, std::int64_t steps,
                                            std::int64_t burn_in, RngStream& rng) {
  params.validate();
  if (steps < 0 || burn_in < 0) throw ConfigError("steps and burn_in must be nonnegative");
  const std::int64_t n = params.n;
  const double dn = static_cast<double>(n);
  const double beta = params.effective_beta();
  const double noise = std::sqrt(beta / dn);
  std::int64_t m = 2 * rng.binomial(n, 0.5) - n;
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t k = 0; k < burn_in + steps; ++k) {
    const double a = noise * rng.normal() + params.mu + beta * static_cast<double>(m) / dn;
    m = 2 * rng.binomial(n, logistic(a)) - n;
    if (k >= burn_in) out.push_back(m);
  }
  return out;
}

FPair sample_coupled_F_pair(const ModelParams& params, const DeFinettiMeasure& mix,
                            RngStream& rng) {
  if (!params.gamma && params.beta != 1.0)
    throw RegimeMismatch("F-coupling needs beta = 1 or a window instance (" + params.describe() +
                         ")");
  const double n = static_cast<double>(params.n);
  const double q4 = std::pow(n, 0.25);
  FPair f;
  const double t = sample_T(mix, rng);
  f.G = rng.normal();
  f.F = q4 * t;
  f.F_prime = std::fabs(f.G) <= std::sqrt(n) ? f.F - f.G / q4 : f.F;
  f.Q = 0.5 * (1.0 + t);
  f.P = 0.5 * (1.0 + f.F_prime / q4);
  if (!(f.P > 0.0 && f.P < 1.0))
    throw InternalError("coupled parameter left (0, 1) for " + params.describe());
  return f;
}

double sample_limit(const LimitLaw& law, RngStream& rng) {
  if (law.kind() == LimitKind::GaussianSubcritical) return law.stddev() * rng.normal();
  return law.quantile(rng.uniform());
}

}  // namespace cwlab
