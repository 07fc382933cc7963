#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cwlab/limit_law.hpp"
#include "cwlab/metrics.hpp"

namespace cwlab {

struct CheckReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<double> observed;
  std::vector<double> target;
  bool passed = false;
  std::string detail;
};

/// Worker count: CWLAB_THREADS if set and positive, else hardware concurrency.
int worker_count();

/// Runs body(0..count-1) on up to worker_count() threads. The exception of the
/// lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Shortest round-trip decimal form, independent of locale.
std::string format_double(double v);

/// Geometric grid min, min*factor, ... <= max.
std::vector<std::int64_t> geometric_grid(std::int64_t min, std::int64_t max, std::int64_t factor);

// Mixing normalizer checks.
CheckReport check_Z_subcritical(double beta, std::int64_t n);
CheckReport check_Z_critical(std::int64_t n);
CheckReport check_Z_window(double gamma, std::int64_t n);
/// Ratio test over n, 4n, ..., 4^steps n.
CheckReport check_Z_supercritical(double beta, std::int64_t n, int steps = 1);
CheckReport check_density_max(std::int64_t n);
CheckReport check_centered_binomial_distance(double p, double q, std::int64_t n,
                                             double slack = 3.0);

enum class RateMethod { ExactKol, SurrogateKol, Smooth };
const char* method_name(RateMethod m);
/// Accepts "exact-kol", "surrogate-kol", "smooth". Throws ConfigError.
RateMethod parse_method(const std::string& s);

struct RateSpec {
  Regime regime = Regime::Subcritical;
  RateMethod method = RateMethod::ExactKol;
  std::vector<std::int64_t> n_grid;
  double beta = 0.5;   // subcritical / supercritical
  double gamma = 1.0;  // window
};

/// Model instance of the regime at size n.
ModelParams regime_params(const RateSpec& spec, std::int64_t n);

/// Distance between the law at size n and the regime's limit.
double regime_distance(const RateSpec& spec, std::int64_t n);

/// (n, distance) for every grid point, computed in parallel, in grid order.
std::vector<std::pair<double, double>> distance_series(const RateSpec& spec);

/// Accepted slope interval for a regime and method.
std::pair<double, double> slope_window(Regime regime, RateMethod method);

/// Slope check on an already computed series.
CheckReport rate_report(const RateSpec& spec, const std::vector<std::pair<double, double>>& series);
CheckReport check_regime_rate(const RateSpec& spec);

/// Passes iff the series decreases and d(4n) / d(n) <= max_ratio for every
/// pair of grid points four apart in n.
CheckReport check_ratio_decay(const RateSpec& spec, double max_ratio);

/// Overrides for named checks; unset fields take the documented defaults.
struct CheckOptions {
  std::optional<std::int64_t> n;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> slack;
  std::optional<std::vector<std::int64_t>> n_grid;
};

/// Every named check, in suite order.
const std::vector<std::string>& check_names();
/// Names run by a full suite: all checks except known-divergent ones.
const std::vector<std::string>& default_suite();
/// Throws ConfigError for unknown names.
CheckReport run_named_check(const std::string& name, const CheckOptions& opts);

}  // namespace cwlab
