#include "cwlab/functions.hpp"

#include <array>
#include <cmath>
#include <string>

#include "cwlab/error.hpp"

namespace cwlab {

double log_cosh(double x) {
  const double ax = std::fabs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

double phi_beta(double x, double beta) { return x * x / (2.0 * beta) - log_cosh(x); }

double phi_beta_prime(double x, double beta) { return x / beta - std::tanh(x); }

double phi_beta_second(double x, double beta) {
  const double t = std::tanh(x);
  return 1.0 / beta - 1.0 + t * t;
}

double logistic(double alpha) { return 0.5 * (1.0 + std::tanh(alpha)); }

double logistic_inv(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("logistic_inv requires 0 < p < 1 (got " + std::to_string(p) + ")");
  return std::atanh(2.0 * p - 1.0);
}

double log_logistic(double alpha) {
  // log(1 / (1 + e^{-2 alpha}))
  const double z = -2.0 * alpha;
  if (z > 0) return -(z + std::log1p(std::exp(-z)));
  return -std::log1p(std::exp(z));
}

CriticalPoint solve_critical_point(double beta) {
  if (!(beta > 1.0))
    throw NoPositiveRoot("tanh(x) = x/beta has no positive root for beta <= 1 (beta=" +
                         std::to_string(beta) + ")");
  auto f = [beta](double x) { return std::tanh(x) - x / beta; };
  // f > 0 just right of 0 and f(beta) = tanh(beta) - 1 < 0.
  double lo = 1e-8, hi = beta;
  if (!(f(lo) > 0.0)) {
    // beta extremely close to 1: the root is below 1e-8 * sqrt(3).
    lo = 0.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {
    const double t = std::tanh(x);
    const double d = (1.0 - t * t) - 1.0 / beta;
    if (d == 0.0) break;
    const double step = f(x) / d;
    const double nx = x - step;
    if (!(nx > lo && nx < hi) && lo > 0.0) break;
    x = nx;
    if (std::fabs(step) < 1e-17 * x) break;
  }
  CriticalPoint cp;
  cp.x_beta = x;
  cp.m_beta = std::tanh(x);
  cp.phi_second = phi_beta_second(x, beta);
  return cp;
}

double lanczos_gamma(double x) {
  static constexpr std::array<double, 9> kCoef = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
  x -= 1.0;
  double a = kCoef[0];
  const double t = x + 7.5;
  for (std::size_t i = 1; i < kCoef.size(); ++i) a += kCoef[i] / (x + static_cast<double>(i));
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double gamma_quarter() { return lanczos_gamma(0.25); }

double quartic_normalizer_closed_form() {
  return std::pow(3.0, 0.25) / std::sqrt(2.0) * gamma_quarter();
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

}  // namespace cwlab
