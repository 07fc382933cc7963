#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cwlab/params.hpp"

namespace cwlab {

inline constexpr double kDefaultTailTol = 1e-14;
inline constexpr int kDefaultGridPoints = 128;

/// Tabulated De Finetti mixing law of the Curie-Weiss spins.
///
/// All work happens in x = artanh(t) coordinates where the density is
/// exp(-n * phi_beta(x)) / Z and smooth on the whole line. The support is
/// truncated to [-L, L]; L is chosen from an explicit Gaussian tail bound so
/// that the omitted mass is below `tail_tol`. Laws of T = tanh(X) and
/// P = (1 + T) / 2 are obtained by pushing forward.
///
/// Immutable after construction.
class DeFinettiMeasure {
 public:
  /// Throws ConfigError for grid_points < 64 or tail_tol outside (0, 1e-6],
  /// NumericalError if the quadrature produces non-finite values.
  static DeFinettiMeasure build(const ModelParams& params, double tail_tol = kDefaultTailTol,
                                int grid_points = kDefaultGridPoints);

  const ModelParams& params() const { return params_; }
  std::int64_t n() const { return params_.n; }
  double beta() const { return beta_; }
  double half_width() const { return half_width_; }

  /// log Z_{n,beta} with Z = integral of exp(-n phi_beta) over the real line.
  double log_normalizer() const { return log_z_; }
  /// Certified bound on the normalized mass outside [-L, L].
  double truncation_error() const { return truncation_error_; }

  /// Tabulation: strictly increasing grid on [-L, L], the unnormalized
  /// log-density -n phi_beta(x), and the CDF on that grid.
  std::span<const double> xgrid() const { return xgrid_; }
  std::span<const double> log_density() const { return log_density_; }
  std::span<const double> cdf_grid() const { return cdf_; }

  double density(double x) const;
  double cdf(double x) const;
  /// Inverse CDF through monotone cubic interpolation of the tabulated CDF.
  double quantile(double u) const;

  /// Densities of the pushforwards T = tanh(X) on (-1, 1) and P = (1 + T)/2.
  double density_t(double t) const;
  double density_p(double p) const;
  double cdf_t(double t) const;

  /// Quadrature nodes in x with normalized weights (sum to 1).
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> node_weights() const { return node_weights_; }

  /// E[f(X)] by the stored quadrature rule, summed in fixed node order.
  template <class F>
  double expect(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) s += node_weights_[i] * f(nodes_[i]);
    return s;
  }

 private:
  DeFinettiMeasure() = default;

  double log_shape(double x) const;  // -n (phi(x) - phi_min)

  ModelParams params_;
  double beta_ = 1.0;
  double phi_min_ = 0.0;
  double log_z_shifted_ = 0.0;  // log of integral of exp(log_shape)
  double log_z_ = 0.0;
  double half_width_ = 0.0;
  double truncation_error_ = 0.0;

  std::vector<double> edges_;
  std::vector<double> edge_cdf_;
  std::vector<double> xgrid_;
  std::vector<double> log_density_;
  std::vector<double> cdf_;
  std::vector<double> slope_;  // limited Hermite slopes for quantile()
  std::vector<double> nodes_;
  std::vector<double> node_weights_;
};

}  // namespace cwlab
