#include "cwlab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "cwlab/definetti.hpp"
#include "cwlab/error.hpp"
#include "cwlab/exact.hpp"
#include "cwlab/functions.hpp"
#include "cwlab/samplers.hpp"

namespace cwlab {

namespace {

using Param = std::pair<std::string, std::string>;

Param kv(const std::string& k, double v) { return {k, format_double(v)}; }
Param kv(const std::string& k, std::int64_t v) { return {k, std::to_string(v)}; }

std::string grid_string(const std::vector<std::int64_t>& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s;
}

/// Maximizes f on [a, b] by golden-section search.
template <class F>
double golden_max(F&& f, double a, double b, int iters = 100) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-15 * std::max(1.0, std::fabs(a)); ++i) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    }
  }
  return 0.5 * (a + b);
}

double log_z(const ModelParams& p) { return DeFinettiMeasure::build(p).log_normalizer(); }

/// |n^{1/4} Z_{n,beta_n} / Z_limit - 1| for beta = 1 (no gamma) or window gamma.
double quartic_z_deviation(std::int64_t n, std::optional<double> gamma, double z_limit) {
  const auto p = gamma ? ModelParams::window(n, *gamma) : ModelParams::make(n, 1.0);
  const double v = std::exp(0.25 * std::log(static_cast<double>(n)) + log_z(p)) / z_limit;
  return std::fabs(v - 1.0);
}

CheckReport quartic_z_check(const std::string& name, std::int64_t n, std::optional<double> gamma) {
  const auto law = gamma ? LimitLaw::quartic_gamma(*gamma) : LimitLaw::quartic();
  const double d1 = quartic_z_deviation(n, gamma, law.normalizer());
  const double d4 = quartic_z_deviation(4 * n, gamma, law.normalizer());
  CheckReport r;
  r.name = name;
  if (gamma) r.params.push_back(kv("gamma", *gamma));
  r.params.push_back(kv("n", n));
  r.observed = {d1, d4, d4 / d1};
  r.target = {0.6};
  r.passed = d4 <= 0.6 * d1;
  r.detail = "deviation |n^{1/4} Z / Z_limit - 1| at n and 4n; pass iff ratio <= 0.6; Z_limit = " +
             format_double(law.normalizer());
  return r;
}

/// Density of F_n = n^{1/4} T at y = n^{1/4} tanh(x), written in x.
double fn_density(const DeFinettiMeasure& mix, double x) {
  const double c = std::cosh(x);
  return mix.density(x) * c * c / std::pow(static_cast<double>(mix.n()), 0.25);
}

struct DensityMax {
  double x = 0.0;
  double value = 0.0;
  double mirror = 0.0;
  bool shape_ok = false;
};

DensityMax locate_density_max(std::int64_t n) {
  const auto mix = DeFinettiMeasure::build(ModelParams::make(n, 1.0));
  const auto xs = mix.xgrid();
  std::size_t best = 0;
  double best_v = -1.0;
  std::vector<double> g(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    g[i] = fn_density(mix, xs[i]);
    if (xs[i] > 0.0 && g[i] > best_v) {
      best_v = g[i];
      best = i;
    }
  }
  DensityMax out;
  const double a = xs[best - 1], b = xs[std::min(best + 1, xs.size() - 1)];
  out.x = golden_max([&](double x) { return fn_density(mix, x); }, std::max(a, 0.0), b);
  out.value = fn_density(mix, out.x);
  out.mirror = fn_density(mix, -out.x);
  // Successive differences should change sign as +, -, +, - with the middle switch at 0.
  std::vector<int> signs;
  std::vector<double> where;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double d = g[i + 1] - g[i];
    if (d == 0.0) continue;
    const int s = d > 0.0 ? 1 : -1;
    if (signs.empty() || signs.back() != s) {
      signs.push_back(s);
      where.push_back(xs[i]);
    }
  }
  out.shape_ok = signs == std::vector<int>{1, -1, 1, -1} && where[2] == 0.0;
  return out;
}

}  // namespace

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("CWLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(std::min<long>(v, 256));
  }
  return hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(worker_count()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = count;
  std::exception_ptr failure;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::int64_t> geometric_grid(std::int64_t min, std::int64_t max, std::int64_t factor) {
  if (min < 1 || max < min || factor < 2)
    throw ConfigError("n-grid needs 1 <= min <= max and factor >= 2");
  std::vector<std::int64_t> g;
  for (std::int64_t n = min; n <= max; n *= factor) {
    g.push_back(n);
    if (n > max / factor) break;
  }
  return g;
}

CheckReport check_Z_subcritical(double beta, std::int64_t n) {
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("z-subcritical needs 0 < beta < 1");
  const double c = 1.0 / beta - 1.0;
  const double z = std::exp(log_z(ModelParams::make(n, beta)));
  const double signed_dev = 1.0 - std::sqrt(c / (2.0 * kPi)) * z * std::sqrt(static_cast<double>(n));
  const double bound = std::pow(c, -4.5) / (4.0 * static_cast<double>(n));
  CheckReport r;
  r.name = "z-subcritical";
  r.params = {kv("beta", beta), kv("n", n)};
  r.observed = {signed_dev};
  r.target = {bound};
  r.passed = signed_dev >= 0.0 && signed_dev <= bound;
  r.detail = "1 - sqrt(C/(2 pi)) Z sqrt(n) must lie in [0, C^{-9/2}/(4n)], C = 1/beta - 1 = " +
             format_double(c);
  return r;
}

CheckReport check_Z_critical(std::int64_t n) { return quartic_z_check("z-critical", n, std::nullopt); }

CheckReport check_Z_window(double gamma, std::int64_t n) {
  return quartic_z_check("z-window", n, gamma);
}

CheckReport check_Z_supercritical(double beta, std::int64_t n, int steps) {
  if (!(beta > 1.0)) throw ConfigError("z-supercritical needs beta > 1");
  if (steps < 1) throw ConfigError("z-supercritical needs at least one 4n step");
  const auto cp = solve_critical_point(beta);
  const double target = 2.0 * std::sqrt(2.0 * kPi / cp.phi_second);
  CheckReport r;
  r.name = "z-supercritical";
  r.params = {kv("beta", beta), kv("n", n), kv("steps", static_cast<std::int64_t>(steps))};
  std::vector<double> devs;
  std::int64_t m = n;
  for (int k = 0; k <= steps; ++k, m *= 4) {
    const auto mix = DeFinettiMeasure::build(ModelParams::make(m, beta));
    // log Z + n phi(x_beta) is the normalizer of the shifted density.
    const double a = std::exp(0.5 * std::log(static_cast<double>(m)) + mix.log_normalizer() +
                              static_cast<double>(m) * phi_beta(cp.x_beta, beta));
    devs.push_back(std::fabs(a / target - 1.0));
  }
  r.observed = devs;
  r.passed = cp.phi_second > 0.0;
  for (std::size_t k = 0; k + 1 < devs.size(); ++k) {
    r.observed.push_back(devs[k + 1] / devs[k]);
    r.passed = r.passed && devs[k + 1] <= 0.6 * devs[k];
  }
  r.target = {0.6, target};
  r.detail = "relative deviation of sqrt(n) e^{n phi(x_beta)} Z from 2 sqrt(2 pi / phi''(x_beta)) at n, 4n, ...; "
             "pass iff each 4n ratio <= 0.6; phi'' = " + format_double(cp.phi_second);
  return r;
}

CheckReport check_density_max(std::int64_t n) {
  if (n < 10) throw ConfigError("density-max needs n >= 10");
  const double inv_zf = 1.0 / LimitLaw::quartic().normalizer();
  const auto a = locate_density_max(n);
  const auto b = locate_density_max(4 * n);
  const double d1 = std::fabs(a.value - inv_zf), d4 = std::fabs(b.value - inv_zf);
  const double loc = std::sqrt(6.0 / static_cast<double>(n));
  const double loc_err = std::fabs(a.x / loc - 1.0);
  const bool sym = std::fabs(a.value - a.mirror) <= 1e-12 * a.value;
  const bool loc_ok = n < 1000 || loc_err <= 0.2;
  CheckReport r;
  r.name = "density-max";
  r.params = {kv("n", n)};
  r.observed = {a.value, b.value, d1, d4, d4 / d1, a.x, loc_err};
  r.target = {inv_zf, 0.6, loc, 0.2};
  r.passed = d4 <= 0.6 * d1 && a.shape_ok && b.shape_ok && sym && loc_ok;
  r.detail = "max of the F_n density vs 1/Z_F at n and 4n (ratio <= 0.6); maximizer x_n vs sqrt(6/n) "
             "within 20% (gating for n >= 1000); two symmetric maxima with a minimum at 0: " +
             std::string(a.shape_ok && b.shape_ok ? "yes" : "no");
  return r;
}

CheckReport check_centered_binomial_distance(double p, double q, std::int64_t n, double slack) {
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) throw ConfigError("p, q must lie in (0, 1)");
  if (!(slack >= 0.0)) throw ConfigError("slack must be nonnegative");
  auto centered = [n](double prob, std::vector<double>& xs, std::vector<double>& ps) {
    const auto pmf = binomial_spin_pmf(n, prob);
    const double mean = static_cast<double>(n) * (2.0 * prob - 1.0);
    for (std::size_t j = 0; j < pmf.size(); ++j) {
      xs.push_back(static_cast<double>(pmf.value(j)) - mean);
      ps.push_back(pmf.probs[j]);
    }
  };
  std::vector<double> xa, pa, xb, pb;
  centered(p, xa, pa);
  centered(q, xb, pb);
  const double d = kolmogorov_discrete(xa, pa, xb, pb);
  const double lead = std::fabs(p - q) * std::fabs(1.0 - (p + q)) / (p * (1.0 - p));
  const double bound = lead + slack / std::sqrt(static_cast<double>(n));
  CheckReport r;
  r.name = "centered-binomial";
  r.params = {kv("p", p), kv("q", q), kv("n", n), kv("slack", slack)};
  r.observed = {d};
  r.target = {bound, lead};
  r.passed = d <= bound;
  r.detail = "d_Kol of centered binomials <= |p-q||1-(p+q)|/(p(1-p)) + slack/sqrt(n); "
             "slack constant " + format_double(slack) + " stands in for the unspecified O(1/sqrt(n))";
  return r;
}

const char* method_name(RateMethod m) {
  switch (m) {
    case RateMethod::ExactKol: return "exact-kol";
    case RateMethod::SurrogateKol: return "surrogate-kol";
    case RateMethod::Smooth: return "smooth";
  }
  return "?";
}

RateMethod parse_method(const std::string& s) {
  if (s == "exact-kol") return RateMethod::ExactKol;
  if (s == "surrogate-kol") return RateMethod::SurrogateKol;
  if (s == "smooth") return RateMethod::Smooth;
  throw ConfigError("unknown method '" + s + "'");
}

ModelParams regime_params(const RateSpec& spec, std::int64_t n) {
  switch (spec.regime) {
    case Regime::Subcritical:
    case Regime::Supercritical: return ModelParams::make(n, spec.beta);
    case Regime::Critical: return ModelParams::make(n, 1.0);
    case Regime::Window: return ModelParams::window(n, spec.gamma);
  }
  throw InternalError("unhandled regime");
}

double regime_distance(const RateSpec& spec, std::int64_t n) {
  const auto params = regime_params(spec, n);
  const auto limit = limit_law_for(params, spec.regime);
  const double rescale = regime_rescale(spec.regime, n);
  switch (spec.method) {
    case RateMethod::ExactKol: return kolmogorov_exact(exact_pmf(params), limit, rescale);
    case RateMethod::Smooth: {
      const auto pmf = exact_pmf(params);
      return smooth_distance(pmf_expectation(pmf, rescale), limit_expectation(limit),
                             default_test_family(limit.stddev()));
    }
    case RateMethod::SurrogateKol: {
      if (spec.regime != Regime::Subcritical)
        throw RegimeMismatch("surrogate Kolmogorov distance is defined for the subcritical regime");
      const auto mix = DeFinettiMeasure::build(params);
      auto gap = [&](double x) {
        return std::fabs(surrogate_cdf(params, mix, x, rescale) - limit.cdf(x));
      };
      const int points = 1601;
      const double half = 6.0 * limit.stddev();
      const double h = 2.0 * half / (points - 1);
      double best = -1.0, best_x = 0.0;
      for (int i = 0; i < points; ++i) {
        const double x = -half + h * i;
        const double g = gap(x);
        if (g > best) {
          best = g;
          best_x = x;
        }
      }
      const double x = golden_max(gap, best_x - h, best_x + h, 60);
      return std::max(best, gap(x));
    }
  }
  throw InternalError("unhandled method");
}

std::vector<std::pair<double, double>> distance_series(const RateSpec& spec) {
  std::vector<std::pair<double, double>> out(spec.n_grid.size());
  parallel_for(spec.n_grid.size(), [&](std::size_t i) {
    const auto n = spec.n_grid[i];
    out[i] = {static_cast<double>(n), regime_distance(spec, n)};
  });
  return out;
}

std::pair<double, double> slope_window(Regime regime, RateMethod method) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (method) {
    case RateMethod::Smooth: return {-inf, -0.35};
    case RateMethod::SurrogateKol: return {-inf, -0.8};
    case RateMethod::ExactKol:
      if (regime == Regime::Critical || regime == Regime::Window) return {-0.7, -0.3};
      return {-0.65, -0.35};
  }
  return {-inf, inf};
}

CheckReport rate_report(const RateSpec& spec, const std::vector<std::pair<double, double>>& series) {
  CheckReport r;
  r.name = std::string("rate-") + regime_name(spec.regime) + "-" + method_name(spec.method);
  std::vector<std::int64_t> grid;
  for (const auto& pt : series) grid.push_back(static_cast<std::int64_t>(pt.first));
  r.params.push_back({"regime", regime_name(spec.regime)});
  r.params.push_back({"method", method_name(spec.method)});
  if (spec.regime == Regime::Window)
    r.params.push_back(kv("gamma", spec.gamma));
  else if (spec.regime != Regime::Critical)
    r.params.push_back(kv("beta", spec.beta));
  r.params.push_back({"n_grid", grid_string(grid)});
  const auto [lo, hi] = slope_window(spec.regime, spec.method);
  for (const auto& pt : series) r.observed.push_back(pt.second);
  r.target = {lo, hi};
  bool positive = std::all_of(series.begin(), series.end(), [](auto& pt) { return pt.second > 0.0; });
  if (series.size() < 5 || !positive) {
    r.passed = false;
    r.detail = "need >= 5 grid points with positive distances";
    return r;
  }
  const auto fit = fit_rate(series);
  r.observed.push_back(fit.slope);
  r.passed = fit.slope >= lo && fit.slope <= hi;
  r.detail = "log-log slope " + format_double(fit.slope) + " (intercept " +
             format_double(fit.intercept) + ", max residual " + format_double(fit.max_abs_residual) +
             "); accepted window [" + format_double(lo) + ", " + format_double(hi) +
             "]; observed lists distances then slope";
  return r;
}

CheckReport check_regime_rate(const RateSpec& spec) {
  if (spec.n_grid.size() < 5) throw ConfigError("rate check needs an n-grid of at least 5 points");
  return rate_report(spec, distance_series(spec));
}

CheckReport check_ratio_decay(const RateSpec& spec, double max_ratio) {
  const auto series = distance_series(spec);
  CheckReport r;
  r.name = std::string("decay-") + regime_name(spec.regime) + "-" + method_name(spec.method);
  r.params.push_back({"regime", regime_name(spec.regime)});
  r.params.push_back({"method", method_name(spec.method)});
  r.params.push_back({"n_grid", grid_string(spec.n_grid)});
  for (const auto& pt : series) r.observed.push_back(pt.second);
  r.target = {max_ratio};
  bool ok = !series.empty();
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i > 0 && !(series[i].second < series[i - 1].second)) ok = false;
    for (std::size_t j = i + 1; j < series.size(); ++j) {
      if (series[j].first == 4.0 * series[i].first) {
        ++pairs;
        const double ratio = series[j].second / series[i].second;
        r.observed.push_back(ratio);
        if (!(ratio <= max_ratio)) ok = false;
      }
    }
  }
  r.passed = ok && pairs > 0;
  r.detail = "distances must decrease along the grid with d(4n)/d(n) <= " + format_double(max_ratio) +
             "; observed lists distances then the 4n ratios";
  return r;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "z-subcritical",         "z-critical",        "z-window",
      "z-supercritical",       "density-max",       "centered-binomial",
      "rate-subcritical-exact", "rate-subcritical-surrogate", "rate-subcritical-smooth",
      "rate-critical-exact",   "rate-critical-smooth", "rate-window-exact",
      "rate-window-smooth",    "rate-supercritical-exact", "rate-supercritical-smooth"};
  return names;
}

const std::vector<std::string>& default_suite() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& n : check_names())
      if (n != "rate-supercritical-exact") v.push_back(n);
    return v;
  }();
  return names;
}

CheckReport run_named_check(const std::string& name, const CheckOptions& o) {
  if (name == "z-subcritical") return check_Z_subcritical(o.beta.value_or(0.5), o.n.value_or(100));
  if (name == "z-critical") return check_Z_critical(o.n.value_or(400));
  if (name == "z-window") return check_Z_window(o.gamma.value_or(1.0), o.n.value_or(400));
  if (name == "z-supercritical")
    return check_Z_supercritical(o.beta.value_or(2.0), o.n.value_or(400), 2);
  if (name == "density-max") return check_density_max(o.n.value_or(4000));
  if (name == "centered-binomial")
    return check_centered_binomial_distance(o.p.value_or(0.3), o.q.value_or(0.35),
                                            o.n.value_or(1000), o.slack.value_or(3.0));
  const std::string prefix = "rate-";
  if (name.rfind(prefix, 0) == 0) {
    const auto rest = name.substr(prefix.size());
    const auto dash = rest.find('-');
    if (dash != std::string::npos) {
      RateSpec spec;
      spec.regime = parse_regime(rest.substr(0, dash));
      const auto m = rest.substr(dash + 1);
      spec.method = m == "exact"       ? RateMethod::ExactKol
                    : m == "surrogate" ? RateMethod::SurrogateKol
                                       : parse_method(m);
      spec.beta = o.beta.value_or(spec.regime == Regime::Supercritical ? 2.0 : 0.5);
      spec.gamma = o.gamma.value_or(1.0);
      spec.n_grid = o.n_grid.value_or(geometric_grid(64, 8192, 2));
      return check_regime_rate(spec);
    }
  }
  throw ConfigError("unknown check '" + name + "'");
}

}  // namespace cwlab
