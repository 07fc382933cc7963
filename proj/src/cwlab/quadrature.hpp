#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cwlab::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order() const { return static_cast<int>(nodes.size()); }
};

/// Rule of the requested order, computed once and cached.
const GaussRule& gauss_legendre(int order);

/// Default order used by every panel integration in the library.
inline constexpr int kPanelOrder = 16;

template <class F>
double panel(F&& f, double a, double b, const GaussRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < rule.order(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

/// Refines `edges` by panel halving until each panel's Gauss estimate agrees
/// with the sum over its two halves within `abs_tol` (or within a relative
/// 1e-12 of the panel). Returns the refined,
/// strictly increasing edge list.
std::vector<double> refine_partition(const std::function<double(double)>& f,
                                     std::span<const double> edges, double abs_tol,
                                     int max_depth = 12);

/// Adaptive integral over [a, b] with relative tolerance; `initial_panels`
/// uniform panels are refined by halving.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13, int initial_panels = 32);

/// Flattened node/weight list for a partition, in increasing node order.
struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;
};
NodeSet nodes_for(std::span<const double> edges, const GaussRule& rule);

}  // namespace cwlab::quad
