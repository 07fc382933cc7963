#pragma once

#include <span>
#include <string>
#include <vector>

#include "cwlab/params.hpp"

namespace cwlab {

enum class Regime { Subcritical, Critical, Window, Supercritical };

enum class LimitKind { GaussianSubcritical, QuarticF, QuarticFGamma, TwoPointBernoulli };

const char* regime_name(Regime r);
/// Accepts "subcritical", "critical", "window", "supercritical". Throws ConfigError.
Regime parse_regime(const std::string& s);

/// Scale dividing the magnetisation in each regime: sqrt(n), n^{3/4}, n^{3/4}, n.
double regime_rescale(Regime r, std::int64_t n);

/// One of the four fluctuation limits of the magnetisation.
///
/// Quartic kinds are tabulated on [-L, L] by panel Gauss-Legendre; L is chosen
/// so the dropped tail is below 1e-30 of the mass.
class LimitLaw {
 public:
  static LimitLaw gaussian(double beta);          // N(0, 1/(1 - beta))
  static LimitLaw quartic();                      // exp(-x^4/12) / Z_F
  static LimitLaw quartic_gamma(double gamma);    // exp(-gamma x^2/2 - x^4/12) / Z_{F_gamma}
  static LimitLaw two_point(double m);            // (delta_{-m} + delta_{m}) / 2

  LimitKind kind() const { return kind_; }
  /// beta, gamma or m depending on the kind; 0 for QuarticF.
  double parameter() const { return param_; }
  std::string describe() const;

  bool has_pdf() const { return kind_ != LimitKind::TwoPointBernoulli; }
  /// Throws DomainError for the two-point law.
  double pdf(double x) const;
  double cdf(double x) const;
  /// P(X < x).
  double cdf_left(double x) const;
  double quantile(double u) const;

  /// Z_F or Z_{F_gamma}; sqrt(2 pi var) for the Gaussian; 1 for the two-point law.
  double normalizer() const { return normalizer_; }
  double moment(int k) const;
  double stddev() const;

  /// Atoms of the law (empty for continuous kinds).
  std::vector<double> atoms() const;

  /// Quadrature nodes with normalized weights; the two atoms for the two-point law.
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> node_weights() const { return weights_; }

  template <class F>
  double expect(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * f(nodes_[i]);
    return s;
  }

 private:
  LimitLaw() = default;
  void tabulate_quartic();
  double lower_cdf(double x) const;
  double log_shape(double x) const;

  LimitKind kind_ = LimitKind::QuarticF;
  double param_ = 0.0;
  double sigma_ = 1.0;
  double normalizer_ = 1.0;

  std::vector<double> edges_;
  std::vector<double> edge_cdf_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Limit law for the regime; throws RegimeMismatch when params do not fit it.
LimitLaw limit_law_for(const ModelParams& params, Regime regime);

}  // namespace cwlab
