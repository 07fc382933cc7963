#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cwlab/exact.hpp"
#include "cwlab/limit_law.hpp"

namespace cwlab {

/// sup_x |P(S / rescale <= x) - limit.cdf(x)|, evaluated exactly over the
/// atoms of both laws (value and left limit).
double kolmogorov_exact(const MagnetisationPMF& pmf, const LimitLaw& limit, double rescale);

/// Kolmogorov distance between two lattice laws with arbitrary supports.
/// Supports are given as increasing values with probabilities.
double kolmogorov_discrete(std::span<const double> xa, std::span<const double> pa,
                           std::span<const double> xb, std::span<const double> pb);

/// KS statistic of sorted samples against a continuous CDF.
double kolmogorov_empirical(std::span<const double> sorted_samples,
                            const std::function<double(double)>& cdf);

/// h(x) = tanh(omega (x - c)); sup |h| = 1 and sup |h'| = omega.
struct TestFunction {
  double omega = 1.0;
  double center = 0.0;
  double operator()(double x) const { return std::tanh(omega * (x - center)); }
  double sup_norm() const { return 1.0; }
  double lipschitz() const { return omega; }
};

using TestFamily = std::vector<TestFunction>;

/// omega in {1/4, 1/2, 1, 2, 4} times 17 centers evenly spread over [-4 sigma, 4 sigma].
TestFamily default_test_family(double sigma);

/// Expectation functional h -> E[h(X)].
using Expectation = std::function<double(const TestFunction&)>;

/// max over the family of |E_A h - E_B h| / (sup|h| + sup|h'|).
double smooth_distance(const Expectation& a, const Expectation& b, const TestFamily& family);

/// E[h(S / rescale)] under a lattice law.
Expectation pmf_expectation(const MagnetisationPMF& pmf, double rescale);
Expectation limit_expectation(const LimitLaw& law);

struct RateFit {
  std::vector<std::pair<double, double>> points;  // (n, distance)
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
  std::vector<double> residuals;
};

/// Least squares of log d on log n. Needs >= 3 points, strictly increasing n,
/// positive distances; throws DomainError otherwise.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

}  // namespace cwlab
