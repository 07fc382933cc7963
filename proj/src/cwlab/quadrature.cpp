#include "cwlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "cwlab/error.hpp"
#include "cwlab/functions.hpp"

namespace cwlab::quad {

namespace {

GaussRule build_rule(int order) {
  GaussRule r;
  r.nodes.resize(order);
  r.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.nodes[i] = -z;
    r.nodes[order - 1 - i] = z;
    r.weights[i] = w;
    r.weights[order - 1 - i] = w;
  }
  return r;
}

void refine(const std::function<double(double)>& f, double a, double b, double whole,
            double abs_tol, int depth, const GaussRule& rule, std::vector<double>& out) {
  const double mid = 0.5 * (a + b);
  const double left = panel(f, a, mid, rule);
  const double right = panel(f, mid, b, rule);
  if (!std::isfinite(left) || !std::isfinite(right))
    throw NumericalError("non-finite integrand value during quadrature");
  const double diff = std::fabs(left + right - whole);
  // Integrands such as exp(-n phi) carry relative noise of order n * eps; do not chase it.
  const double floor = 1e-12 * (std::fabs(left) + std::fabs(right));
  if (diff <= abs_tol || diff <= floor || depth <= 0) {
    out.push_back(b);
    return;
  }
  refine(f, a, mid, left, 0.5 * abs_tol, depth - 1, rule, out);
  refine(f, mid, b, right, 0.5 * abs_tol, depth - 1, rule, out);
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

std::vector<double> refine_partition(const std::function<double(double)>& f,
                                     std::span<const double> edges, double abs_tol,
                                     int max_depth) {
  const auto& rule = gauss_legendre(kPanelOrder);
  std::vector<double> out;
  if (edges.size() < 2) return {edges.begin(), edges.end()};
  out.reserve(edges.size() * 2);
  out.push_back(edges.front());
  const double per_panel = abs_tol / static_cast<double>(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double whole = panel(f, edges[i], edges[i + 1], rule);
    if (!std::isfinite(whole)) throw NumericalError("non-finite integrand value during quadrature");
    refine(f, edges[i], edges[i + 1], whole, per_panel, max_depth, rule, out);
  }
  return out;
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 int initial_panels) {
  const auto& rule = gauss_legendre(kPanelOrder);
  std::vector<double> edges(initial_panels + 1);
  for (int i = 0; i <= initial_panels; ++i) edges[i] = a + (b - a) * i / initial_panels;
  double rough = 0.0, scale = 0.0;
  for (int i = 0; i < initial_panels; ++i) {
    const double v = panel(f, edges[i], edges[i + 1], rule);
    rough += v;
    scale += std::fabs(v);
  }
  if (!std::isfinite(rough)) throw NumericalError("non-finite integral estimate");
  if (scale == 0.0) return 0.0;
  const auto fine = refine_partition(f, edges, rel_tol * scale);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < fine.size(); ++i) total += panel(f, fine[i], fine[i + 1], rule);
  return total;
}

NodeSet nodes_for(std::span<const double> edges, const GaussRule& rule) {
  NodeSet ns;
  if (edges.size() < 2) return ns;
  const std::size_t panels = edges.size() - 1;
  ns.x.reserve(panels * rule.order());
  ns.w.reserve(panels * rule.order());
  for (std::size_t i = 0; i < panels; ++i) {
    const double half = 0.5 * (edges[i + 1] - edges[i]);
    const double mid = 0.5 * (edges[i + 1] + edges[i]);
    for (int k = 0; k < rule.order(); ++k) {
      ns.x.push_back(mid + half * rule.nodes[k]);
      ns.w.push_back(half * rule.weights[k]);
    }
  }
  return ns;
}

}  // namespace cwlab::quad
