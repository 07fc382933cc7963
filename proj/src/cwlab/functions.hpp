#pragma once

namespace cwlab {

/// log(cosh(x)) without overflow for large |x|.
double log_cosh(double x);

/// Mixing potential x^2 / (2 beta) - log cosh(x); the De Finetti density in
/// x = artanh(t) coordinates is proportional to exp(-n * phi_beta(x)).
double phi_beta(double x, double beta);
double phi_beta_prime(double x, double beta);
double phi_beta_second(double x, double beta);

/// Logistic map (1 + tanh(alpha)) / 2 and its inverse artanh(2p - 1).
double logistic(double alpha);
double logistic_inv(double p);
/// log(logistic(alpha)), accurate in both tails.
double log_logistic(double alpha);

struct CriticalPoint {
  double x_beta;        // positive root of tanh(x) = x / beta
  double m_beta;        // x_beta / beta = tanh(x_beta)
  double phi_second;    // phi_beta''(x_beta) = 1/beta - 1 + tanh^2(x_beta) > 0
};

/// Positive solution of tanh(x) = x / beta. Throws NoPositiveRoot for beta <= 1.
CriticalPoint solve_critical_point(double beta);

/// Gamma function via a Lanczos approximation (g = 7, 9 terms).
double lanczos_gamma(double x);
double gamma_quarter();

/// Z_F = 3^{1/4} 2^{-1/2} Gamma(1/4), the normalizer of exp(-x^4/12).
double quartic_normalizer_closed_form();

double normal_cdf(double x);
double normal_pdf(double x);

inline constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace cwlab
