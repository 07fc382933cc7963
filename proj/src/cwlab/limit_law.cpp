#include "cwlab/limit_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cwlab/error.hpp"
#include "cwlab/functions.hpp"
#include "cwlab/quadrature.hpp"

namespace cwlab {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Subcritical: return "subcritical";
    case Regime::Critical: return "critical";
    case Regime::Window: return "window";
    case Regime::Supercritical: return "supercritical";
  }
  return "?";
}

Regime parse_regime(const std::string& s) {
  if (s == "subcritical") return Regime::Subcritical;
  if (s == "critical") return Regime::Critical;
  if (s == "window") return Regime::Window;
  if (s == "supercritical") return Regime::Supercritical;
  throw ConfigError("unknown regime '" + s + "'");
}

double regime_rescale(Regime r, std::int64_t n) {
  const double dn = static_cast<double>(n);
  switch (r) {
    case Regime::Subcritical: return std::sqrt(dn);
    case Regime::Critical:
    case Regime::Window: return std::pow(dn, 0.75);
    case Regime::Supercritical: return dn;
  }
  return 1.0;
}

LimitLaw LimitLaw::gaussian(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw RegimeMismatch("Gaussian limit needs 0 < beta < 1");
  LimitLaw L;
  L.kind_ = LimitKind::GaussianSubcritical;
  L.param_ = beta;
  L.sigma_ = std::sqrt(1.0 / (1.0 - beta));
  L.normalizer_ = std::sqrt(2.0 * kPi) * L.sigma_;
  const auto& rule = quad::gauss_legendre(quad::kPanelOrder);
  const int panels = 280;
  const double half = 14.0 * L.sigma_;
  std::vector<double> edges(panels + 1);
  for (int i = 0; i <= panels; ++i) edges[i] = -half + 2.0 * half * i / panels;
  const auto ns = quad::nodes_for(edges, rule);
  L.nodes_ = ns.x;
  L.weights_.resize(ns.x.size());
  for (std::size_t i = 0; i < ns.x.size(); ++i) L.weights_[i] = ns.w[i] * L.pdf(ns.x[i]);
  return L;
}

LimitLaw LimitLaw::quartic() {
  LimitLaw L;
  L.kind_ = LimitKind::QuarticF;
  L.param_ = 0.0;
  L.tabulate_quartic();
  return L;
}

LimitLaw LimitLaw::quartic_gamma(double gamma) {
  if (!std::isfinite(gamma)) throw ConfigError("gamma must be finite");
  LimitLaw L;
  L.kind_ = LimitKind::QuarticFGamma;
  L.param_ = gamma;
  L.tabulate_quartic();
  return L;
}

LimitLaw LimitLaw::two_point(double m) {
  if (!(m > 0.0 && m <= 1.0)) throw DomainError("two-point limit needs 0 < m <= 1");
  LimitLaw L;
  L.kind_ = LimitKind::TwoPointBernoulli;
  L.param_ = m;
  L.sigma_ = m;
  L.normalizer_ = 1.0;
  L.nodes_ = {-m, m};
  L.weights_ = {0.5, 0.5};
  return L;
}

double LimitLaw::log_shape(double x) const {
  const double x2 = x * x;
  return -param_ * x2 / 2.0 - x2 * x2 / 12.0;
}

void LimitLaw::tabulate_quartic() {
  const double g = param_;
  // Peak of the exponent, attained at x^2 = -3 gamma when gamma < 0.
  const double top = g < 0.0 ? 0.75 * g * g : 0.0;
  double half = 1.0;
  while (top - log_shape(half) < 80.0) half += 0.25;
  const int panels = static_cast<int>(std::ceil(2.0 * half / 0.05));
  edges_.resize(panels + 1);
  for (int i = 0; i <= panels; ++i) edges_[i] = -half + 2.0 * half * i / panels;
  const auto& rule = quad::gauss_legendre(quad::kPanelOrder);
  auto f = [this](double x) { return std::exp(log_shape(x)); };
  std::vector<double> mass(panels);
  double z = 0.0;
  for (int i = 0; i < panels; ++i) {
    mass[i] = quad::panel(f, edges_[i], edges_[i + 1], rule);
    z += mass[i];
  }
  if (!std::isfinite(z) || z <= 0.0) throw NumericalError("quartic normalizer is not finite");
  normalizer_ = z;
  edge_cdf_.resize(edges_.size());
  edge_cdf_[0] = 0.0;
  double acc = 0.0;
  for (int i = 0; i < panels; ++i) {
    acc += mass[i];
    edge_cdf_[i + 1] = acc / z;
  }
  edge_cdf_.back() = 1.0;
  const auto ns = quad::nodes_for(edges_, rule);
  nodes_ = ns.x;
  weights_.resize(ns.x.size());
  for (std::size_t i = 0; i < ns.x.size(); ++i) weights_[i] = ns.w[i] * f(ns.x[i]) / z;
  sigma_ = std::sqrt(moment(2));
}

std::string LimitLaw::describe() const {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(10);
  switch (kind_) {
    case LimitKind::GaussianSubcritical: os << "N(0, " << sigma_ * sigma_ << ")"; break;
    case LimitKind::QuarticF: os << "F"; break;
    case LimitKind::QuarticFGamma: os << "F_gamma(gamma=" << param_ << ")"; break;
    case LimitKind::TwoPointBernoulli: os << "Ber_pm(m=" << param_ << ")"; break;
  }
  return os.str();
}

double LimitLaw::pdf(double x) const {
  switch (kind_) {
    case LimitKind::GaussianSubcritical: return normal_pdf(x / sigma_) / sigma_;
    case LimitKind::QuarticF:
    case LimitKind::QuarticFGamma: return std::exp(log_shape(x)) / normalizer_;
    case LimitKind::TwoPointBernoulli: break;
  }
  throw DomainError("the two-point law has no density");
}

double LimitLaw::cdf(double x) const {
  switch (kind_) {
    case LimitKind::GaussianSubcritical: return normal_cdf(x / sigma_);
    case LimitKind::TwoPointBernoulli:
      if (x < -param_) return 0.0;
      return x < param_ ? 0.5 : 1.0;
    default: break;
  }
  // Upper half by symmetry keeps full relative precision in both tails.
  if (x > 0.0) return 1.0 - lower_cdf(-x);
  return lower_cdf(x);
}

double LimitLaw::lower_cdf(double x) const {
  if (x <= edges_.front()) return 0.0;
  if (x >= edges_.back()) return 1.0;
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - edges_.begin()) - 1;
  const double part = quad::panel([this](double y) { return std::exp(log_shape(y)); }, edges_[k],
                                  x, quad::gauss_legendre(quad::kPanelOrder));
  return std::clamp(edge_cdf_[k] + part / normalizer_, edge_cdf_[k], edge_cdf_[k + 1]);
}

double LimitLaw::cdf_left(double x) const {
  if (kind_ != LimitKind::TwoPointBernoulli) return cdf(x);
  if (x <= -param_) return 0.0;
  return x <= param_ ? 0.5 : 1.0;
}

double LimitLaw::quantile(double u) const {
  if (kind_ == LimitKind::TwoPointBernoulli) return u <= 0.5 ? -param_ : param_;
  if (u <= 0.0) return -std::numeric_limits<double>::infinity();
  if (u >= 1.0) return std::numeric_limits<double>::infinity();
  double lo = -40.0 * sigma_, hi = 40.0 * sigma_;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double LimitLaw::moment(int k) const {
  if (k < 0) throw DomainError("moment order must be nonnegative");
  if (k == 0) return 1.0;
  if (k % 2 == 1) return 0.0;
  switch (kind_) {
    case LimitKind::GaussianSubcritical: {
      double r = 1.0;
      for (int j = k - 1; j > 0; j -= 2) r *= j;
      return r * std::pow(sigma_, k);
    }
    case LimitKind::TwoPointBernoulli: return std::pow(param_, k);
    default: break;
  }
  return expect([k](double x) { return std::pow(x, k); });
}

double LimitLaw::stddev() const { return sigma_; }

std::vector<double> LimitLaw::atoms() const {
  if (kind_ == LimitKind::TwoPointBernoulli) return {-param_, param_};
  return {};
}

LimitLaw limit_law_for(const ModelParams& params, Regime regime) {
  params.validate();
  switch (regime) {
    case Regime::Subcritical:
      if (params.gamma || !(params.beta < 1.0))
        throw RegimeMismatch("subcritical regime needs beta < 1 (" + params.describe() + ")");
      return LimitLaw::gaussian(params.beta);
    case Regime::Critical:
      if (params.gamma || params.beta != 1.0)
        throw RegimeMismatch("critical regime needs beta = 1 (" + params.describe() + ")");
      return LimitLaw::quartic();
    case Regime::Window:
      if (!params.gamma)
        throw RegimeMismatch("window regime needs gamma (" + params.describe() + ")");
      return LimitLaw::quartic_gamma(*params.gamma);
    case Regime::Supercritical:
      if (params.gamma || !(params.beta > 1.0))
        throw RegimeMismatch("supercritical regime needs beta > 1 (" + params.describe() + ")");
      return LimitLaw::two_point(solve_critical_point(params.beta).m_beta);
  }
  throw InternalError("unhandled regime");
}

}  // namespace cwlab
