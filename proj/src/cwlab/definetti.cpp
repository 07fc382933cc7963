#include "cwlab/definetti.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cwlab/error.hpp"
#include "cwlab/functions.hpp"
#include "cwlab/quadrature.hpp"

namespace cwlab {

namespace {

double log_erfc(double z) {
  if (z < 20.0) return std::log(std::erfc(z));
  // Asymptotic series, relative error < 1e-6 for z >= 20.
  const double z2 = z * z;
  return -z2 - std::log(z * std::sqrt(kPi)) + std::log1p(-0.5 / z2 + 0.75 / (z2 * z2));
}

/// Upper bound on log of the integral of exp(-n (phi(x) - phi_min)) over |x| > L.
double log_tail_bound(double L, double n, double beta, double phi_min) {
  double best = std::numeric_limits<double>::infinity();
  // log cosh(x) <= |x| - log 2 + e^{-2L} for |x| >= L, hence
  // phi(x) >= (x - beta)^2 / (2 beta) - beta/2 + log 2 - e^{-2L}.
  if (L > beta) {
    const double a = n / (2.0 * beta);
    const double lead = std::log(2.0) + n * beta / 2.0 - n * (std::log(2.0) - std::exp(-2.0 * L)) +
                        n * phi_min;
    best = lead + std::log(0.5 * std::sqrt(kPi / a)) + log_erfc(std::sqrt(a) * (L - beta));
  }
  // log cosh(x) <= x^2 / 2, hence phi(x) >= C x^2 / 2 with C = 1/beta - 1.
  if (beta < 1.0) {
    const double a = n * (1.0 / beta - 1.0) / 2.0;
    const double b = n * phi_min + std::log(std::sqrt(kPi / a)) + log_erfc(std::sqrt(a) * L);
    best = std::min(best, b);
  }
  return best;
}

}  // namespace

double DeFinettiMeasure::log_shape(double x) const {
  return -static_cast<double>(params_.n) * (phi_beta(x, beta_) - phi_min_);
}

DeFinettiMeasure DeFinettiMeasure::build(const ModelParams& params, double tail_tol,
                                         int grid_points) {
  params.validate();
  if (grid_points < 64)
    throw ConfigError("grid_points must be >= 64 (got " + std::to_string(grid_points) + ")");
  if (!(tail_tol > 0.0 && tail_tol <= 1e-6))
    throw ConfigError("tail_tol must lie in (0, 1e-6]");

  DeFinettiMeasure m;
  m.params_ = params;
  m.beta_ = params.effective_beta();
  const double n = static_cast<double>(params.n);
  const double beta = m.beta_;

  // Location and width of the mass.
  double peak = 0.0;
  double width = 2.0 * std::pow(n, -0.25);
  if (beta < 1.0) {
    width = std::min(width, 1.0 / std::sqrt(n * (1.0 / beta - 1.0)));
  } else if (beta > 1.0) {
    const auto cp = solve_critical_point(beta);
    peak = cp.x_beta;
    m.phi_min_ = phi_beta(cp.x_beta, beta);
    width = std::min(width, 1.0 / std::sqrt(n * cp.phi_second));
  }
  auto f = [&m](double x) { return std::exp(m.log_shape(x)); };

  // Initial truncation from a rough normalizer estimate; certified below.
  const double log_z_guess = std::log(width);
  double L = peak + width;
  while (log_tail_bound(L, n, beta, m.phi_min_) - log_z_guess > std::log(tail_tol)) L *= 1.25;

  const auto& rule = quad::gauss_legendre(quad::kPanelOrder);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 40) throw NumericalError("could not certify truncation for " + params.describe());
    const int half_panels =
        std::max(grid_points / 2, static_cast<int>(std::ceil(L / (0.5 * width))));
    std::vector<double> half(half_panels + 1);
    for (int i = 0; i <= half_panels; ++i) half[i] = L * i / half_panels;
    double rough = 0.0;
    for (int i = 0; i < half_panels; ++i) rough += quad::panel(f, half[i], half[i + 1], rule);
    if (!std::isfinite(rough) || rough <= 0.0)
      throw NumericalError("non-finite mixing normalizer for " + params.describe());
    half = quad::refine_partition(f, half, 1e-14 * rough);

    std::vector<double> edges;
    edges.reserve(2 * half.size());
    for (std::size_t i = half.size(); i-- > 1;) edges.push_back(-half[i]);
    edges.insert(edges.end(), half.begin(), half.end());

    std::vector<double> panel_mass(edges.size() - 1);
    double zs = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      panel_mass[i] = quad::panel(f, edges[i], edges[i + 1], rule);
      zs += panel_mass[i];
    }
    if (!std::isfinite(zs) || zs <= 0.0)
      throw NumericalError("non-finite mixing normalizer for " + params.describe());

    const double trunc = std::exp(log_tail_bound(L, n, beta, m.phi_min_) - std::log(zs));
    if (trunc > tail_tol) {
      L *= 1.25;
      continue;
    }

    m.half_width_ = L;
    m.truncation_error_ = trunc;
    m.log_z_shifted_ = std::log(zs);
    m.log_z_ = m.log_z_shifted_ - n * m.phi_min_;
    m.edges_ = std::move(edges);
    m.edge_cdf_.resize(m.edges_.size());
    double acc = 0.0;
    m.edge_cdf_[0] = 0.0;
    for (std::size_t i = 0; i < panel_mass.size(); ++i) {
      acc += panel_mass[i];
      m.edge_cdf_[i + 1] = acc / zs;
    }
    m.edge_cdf_.back() = 1.0;
    break;
  }

  // Tabulation: each panel split in four.
  const std::size_t panels = m.edges_.size() - 1;
  m.xgrid_.reserve(4 * panels + 1);
  m.cdf_.reserve(4 * panels + 1);
  for (std::size_t i = 0; i < panels; ++i) {
    const double a = m.edges_[i], b = m.edges_[i + 1];
    m.xgrid_.push_back(a);
    m.cdf_.push_back(m.edge_cdf_[i]);
    for (int k = 1; k < 4; ++k) {
      const double x = a + (b - a) * k / 4.0;
      m.xgrid_.push_back(x);
      m.cdf_.push_back(std::min(
          1.0, m.edge_cdf_[i] + quad::panel(f, a, x, rule) / std::exp(m.log_z_shifted_)));
    }
  }
  m.xgrid_.push_back(m.edges_.back());
  m.cdf_.push_back(1.0);
  for (std::size_t i = 1; i < m.cdf_.size(); ++i) m.cdf_[i] = std::max(m.cdf_[i], m.cdf_[i - 1]);

  m.log_density_.resize(m.xgrid_.size());
  m.slope_.resize(m.xgrid_.size());
  for (std::size_t i = 0; i < m.xgrid_.size(); ++i) {
    m.log_density_[i] = -n * phi_beta(m.xgrid_[i], beta);
    m.slope_[i] = m.density(m.xgrid_[i]);
  }
  // Fritsch-Carlson limiter keeps the Hermite interpolant monotone.
  for (std::size_t i = 0; i + 1 < m.xgrid_.size(); ++i) {
    const double h = m.xgrid_[i + 1] - m.xgrid_[i];
    const double secant = (m.cdf_[i + 1] - m.cdf_[i]) / h;
    if (secant <= 0.0) {
      m.slope_[i] = 0.0;
      m.slope_[i + 1] = 0.0;
      continue;
    }
    const double a = m.slope_[i] / secant, b = m.slope_[i + 1] / secant;
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      m.slope_[i] = tau * a * secant;
      m.slope_[i + 1] = tau * b * secant;
    }
  }

  const auto ns = quad::nodes_for(m.edges_, rule);
  m.nodes_ = ns.x;
  m.node_weights_.resize(ns.x.size());
  const double inv = std::exp(-m.log_z_shifted_);
  for (std::size_t i = 0; i < ns.x.size(); ++i)
    m.node_weights_[i] = ns.w[i] * std::exp(m.log_shape(ns.x[i])) * inv;
  return m;
}

double DeFinettiMeasure::density(double x) const {
  return std::exp(log_shape(x) - log_z_shifted_);
}

double DeFinettiMeasure::cdf(double x) const {
  if (x <= edges_.front()) return 0.0;
  if (x >= edges_.back()) return 1.0;
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - edges_.begin()) - 1;
  const auto& rule = quad::gauss_legendre(quad::kPanelOrder);
  const double part =
      quad::panel([this](double y) { return std::exp(log_shape(y) - log_z_shifted_); },
                  edges_[k], x, rule);
  return std::clamp(edge_cdf_[k] + part, 0.0, 1.0);
}

double DeFinettiMeasure::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  if (u <= 0.0) return xgrid_.front();
  if (u >= 1.0) return xgrid_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
  if (i == 0) return xgrid_.front();
  if (i >= cdf_.size()) return xgrid_.back();
  --i;
  const double x0 = xgrid_[i], x1 = xgrid_[i + 1];
  const double y0 = cdf_[i], y1 = cdf_[i + 1];
  if (y1 <= y0) return x0;
  const double h = x1 - x0;
  const double d0 = slope_[i] * h, d1 = slope_[i + 1] * h;
  auto hermite = [&](double s) {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * d0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * d1;
  };
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 60 && hi - lo > 1e-15; ++k) {
    const double mid = 0.5 * (lo + hi);
    (hermite(mid) < u ? lo : hi) = mid;
  }
  // Newton on the exact CDF, kept inside the cell.
  double x = x0 + h * 0.5 * (lo + hi);
  for (int k = 0; k < 3; ++k) {
    const double f = density(x);
    if (!(f > 0.0)) break;
    const double step = (cdf(x) - u) / f;
    x = std::clamp(x - step, x0, x1);
    if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(x))) break;
  }
  return x;
}

double DeFinettiMeasure::density_t(double t) const {
  if (!(t > -1.0 && t < 1.0)) return 0.0;
  return density(std::atanh(t)) / (1.0 - t * t);
}

double DeFinettiMeasure::density_p(double p) const {
  if (!(p > 0.0 && p < 1.0)) return 0.0;
  return density(logistic_inv(p)) / (2.0 * p * (1.0 - p));
}

double DeFinettiMeasure::cdf_t(double t) const {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return cdf(std::atanh(t));
}

}  // namespace cwlab
