#include "cwlab/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "cwlab/error.hpp"

namespace cwlab {

double kolmogorov_exact(const MagnetisationPMF& pmf, const LimitLaw& limit, double rescale) {
  if (!(rescale > 0.0)) throw DomainError("rescale must be positive");
  const auto cum = pmf.cumulative();
  std::vector<double> xs(pmf.size());
  for (std::size_t j = 0; j < pmf.size(); ++j) xs[j] = static_cast<double>(pmf.value(j)) / rescale;

  double d = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double below = j == 0 ? 0.0 : cum[j - 1];
    d = std::max(d, std::fabs(cum[j] - limit.cdf(xs[j])));
    d = std::max(d, std::fabs(below - limit.cdf_left(xs[j])));
  }
  for (double a : limit.atoms()) {
    const auto le = std::upper_bound(xs.begin(), xs.end(), a) - xs.begin();
    const auto lt = std::lower_bound(xs.begin(), xs.end(), a) - xs.begin();
    const double f_at = le == 0 ? 0.0 : cum[le - 1];
    const double f_left = lt == 0 ? 0.0 : cum[lt - 1];
    d = std::max(d, std::fabs(f_at - limit.cdf(a)));
    d = std::max(d, std::fabs(f_left - limit.cdf_left(a)));
  }
  return d;
}

double kolmogorov_discrete(std::span<const double> xa, std::span<const double> pa,
                           std::span<const double> xb, std::span<const double> pb) {
  if (xa.size() != pa.size() || xb.size() != pb.size())
    throw DomainError("support and probability sizes differ");
  std::size_t i = 0, j = 0;
  double fa = 0.0, fb = 0.0, d = 0.0;
  while (i < xa.size() || j < xb.size()) {
    double x;
    if (j >= xb.size() || (i < xa.size() && xa[i] <= xb[j]))
      x = xa[i];
    else
      x = xb[j];
    while (i < xa.size() && xa[i] == x) fa += pa[i++];
    while (j < xb.size() && xb[j] == x) fb += pb[j++];
    d = std::max(d, std::fabs(fa - fb));
  }
  return d;
}

double kolmogorov_empirical(std::span<const double> sorted_samples,
                            const std::function<double(double)>& cdf) {
  if (sorted_samples.empty()) throw DomainError("need at least one sample");
  const double N = static_cast<double>(sorted_samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double f = cdf(sorted_samples[i]);
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / N - f, f - static_cast<double>(i) / N));
  }
  return d;
}

TestFamily default_test_family(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("test family scale must be positive");
  TestFamily fam;
  for (double omega : {0.25, 0.5, 1.0, 2.0, 4.0})
    for (int k = 0; k < 17; ++k) fam.push_back({omega, -4.0 * sigma + 8.0 * sigma * k / 16.0});
  return fam;
}

double smooth_distance(const Expectation& a, const Expectation& b, const TestFamily& family) {
  if (family.empty()) throw DomainError("test family is empty");
  double d = 0.0;
  for (const auto& h : family)
    d = std::max(d, std::fabs(a(h) - b(h)) / (h.sup_norm() + h.lipschitz()));
  return d;
}

Expectation pmf_expectation(const MagnetisationPMF& pmf, double rescale) {
  return [&pmf, rescale](const TestFunction& h) {
    double s = 0.0;
    for (std::size_t j = 0; j < pmf.size(); ++j)
      s += pmf.probs[j] * h(static_cast<double>(pmf.value(j)) / rescale);
    return s;
  };
}

Expectation limit_expectation(const LimitLaw& law) {
  return [&law](const TestFunction& h) { return law.expect(h); };
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DomainError("rate fit needs at least 3 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].second > 0.0)) throw DomainError("rate fit needs positive distances");
    if (!(points[i].first > 0.0)) throw DomainError("rate fit needs positive n");
    if (i > 0 && !(points[i].first > points[i - 1].first))
      throw DomainError("rate fit needs strictly increasing n");
  }
  const double m = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [n, d] : points) {
    sx += std::log(n);
    sy += std::log(d);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, d] : points) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(d) - my);
  }
  RateFit fit;
  fit.points = points;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& [n, d] : points) {
    const double r = std::log(d) - (fit.intercept + fit.slope * std::log(n));
    fit.residuals.push_back(r);
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::fabs(r));
  }
  return fit;
}

}  // namespace cwlab
