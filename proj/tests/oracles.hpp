#pragma once

// Small independent reference computations for the tests. Deliberately naive.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

template <class F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Composite trapezoid; spectrally accurate for smooth integrands that vanish at the ends.
template <class F>
double trapezoid(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < panels; ++i) s += f(a + i * h);
  return s * h;
}

// Law of the spin sum by summing over all 2^n configurations.
inline std::vector<double> enumerate_pmf(int n, double beta) {
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
    const int ups = __builtin_popcountll(c);
    const double s = 2.0 * ups - n;
    w[static_cast<std::size_t>(ups)] += std::exp(beta * s * s / (2.0 * n));
  }
  double z = 0.0;
  for (double v : w) z += v;
  for (double& v : w) v /= z;
  return w;
}

inline double binomial_pmf(int n, int k, double p) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                  k * std::log(p) + (n - k) * std::log1p(-p));
}

}  // namespace oracle
