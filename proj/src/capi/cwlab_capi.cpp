#include "cwlab/cwlab.h"

#include <exception>
#include <new>
#include <string>

#include "cwlab/definetti.hpp"
#include "cwlab/error.hpp"
#include "cwlab/exact.hpp"
#include "cwlab/functions.hpp"
#include "cwlab/limit_law.hpp"
#include "cwlab/metrics.hpp"
#include "cwlab/rng.hpp"
#include "cwlab/samplers.hpp"
#include "cwlab/verify.hpp"

struct cwlab_mixture {
  cwlab::DeFinettiMeasure m;
};
struct cwlab_pmf {
  cwlab::MagnetisationPMF p;
};
struct cwlab_limit {
  cwlab::LimitLaw l;
};
struct cwlab_rng {
  cwlab::RngStream r;
};
struct cwlab_report {
  cwlab::CheckReport r;
};

namespace {

thread_local std::string g_last_error;

cwlab_status status_of(cwlab::ErrorKind k) {
  switch (k) {
    case cwlab::ErrorKind::Config: return CWLAB_ERR_CONFIG;
    case cwlab::ErrorKind::Domain: return CWLAB_ERR_DOMAIN;
    case cwlab::ErrorKind::Numerical: return CWLAB_ERR_NUMERICAL;
    case cwlab::ErrorKind::NoPositiveRoot: return CWLAB_ERR_NO_POSITIVE_ROOT;
    case cwlab::ErrorKind::RegimeMismatch: return CWLAB_ERR_REGIME;
    case cwlab::ErrorKind::Internal: return CWLAB_ERR_INTERNAL;
  }
  return CWLAB_ERR_INTERNAL;
}

cwlab_status fail(cwlab_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
cwlab_status guard(F&& f) {
  try {
    f();
    return CWLAB_OK;
  } catch (const cwlab::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CWLAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CWLAB_ERR_INTERNAL, e.what());
  }
}

#define CWLAB_REQUIRE(ptr)                                            \
  do {                                                                \
    if (!(ptr)) return fail(CWLAB_ERR_NULL, "null argument: " #ptr); \
  } while (0)

cwlab::ModelParams to_params(const cwlab_params* p) {
  cwlab::ModelParams m;
  m.n = p->n;
  m.beta = p->beta;
  if (p->has_gamma) m.gamma = p->gamma;
  m.mu = p->mu;
  m.validate();
  return m;
}

cwlab::Regime to_regime(cwlab_regime r) {
  switch (r) {
    case CWLAB_SUBCRITICAL: return cwlab::Regime::Subcritical;
    case CWLAB_CRITICAL: return cwlab::Regime::Critical;
    case CWLAB_WINDOW: return cwlab::Regime::Window;
    case CWLAB_SUPERCRITICAL: return cwlab::Regime::Supercritical;
  }
  throw cwlab::ConfigError("unknown regime code " + std::to_string(static_cast<int>(r)));
}

cwlab::RateMethod to_method(cwlab_method m) {
  switch (m) {
    case CWLAB_EXACT_KOL: return cwlab::RateMethod::ExactKol;
    case CWLAB_SURROGATE_KOL: return cwlab::RateMethod::SurrogateKol;
    case CWLAB_SMOOTH: return cwlab::RateMethod::Smooth;
  }
  throw cwlab::ConfigError("unknown method code " + std::to_string(static_cast<int>(m)));
}

cwlab::RateSpec to_spec(const cwlab_rate_spec* s, const int64_t* grid, size_t len) {
  cwlab::RateSpec spec;
  spec.regime = to_regime(s->regime);
  spec.method = to_method(s->method);
  spec.beta = s->beta;
  spec.gamma = s->gamma;
  if (grid) spec.n_grid.assign(grid, grid + len);
  return spec;
}

}  // namespace

extern "C" {

const char* cwlab_version(void) { return "1.0.0"; }

const char* cwlab_last_error(void) { return g_last_error.c_str(); }

const char* cwlab_status_name(cwlab_status s) {
  switch (s) {
    case CWLAB_OK: return "ok";
    case CWLAB_ERR_CONFIG: return "config error";
    case CWLAB_ERR_DOMAIN: return "domain error";
    case CWLAB_ERR_NUMERICAL: return "numerical error";
    case CWLAB_ERR_NO_POSITIVE_ROOT: return "no positive root";
    case CWLAB_ERR_REGIME: return "regime mismatch";
    case CWLAB_ERR_INTERNAL: return "internal error";
    case CWLAB_ERR_NULL: return "null argument";
    case CWLAB_ERR_RANGE: return "index out of range";
  }
  return "unknown status";
}

cwlab_status cwlab_params_validate(const cwlab_params* p) {
  CWLAB_REQUIRE(p);
  return guard([&] { to_params(p); });
}

cwlab_status cwlab_parse_regime(const char* s, cwlab_regime* out) {
  CWLAB_REQUIRE(s);
  CWLAB_REQUIRE(out);
  return guard([&] { *out = static_cast<cwlab_regime>(static_cast<int>(cwlab::parse_regime(s))); });
}

const char* cwlab_regime_name(cwlab_regime r) {
  try {
    return cwlab::regime_name(to_regime(r));
  } catch (...) {
    return "unknown";
  }
}

cwlab_status cwlab_parse_method(const char* s, cwlab_method* out) {
  CWLAB_REQUIRE(s);
  CWLAB_REQUIRE(out);
  return guard([&] {
    switch (cwlab::parse_method(s)) {
      case cwlab::RateMethod::ExactKol: *out = CWLAB_EXACT_KOL; break;
      case cwlab::RateMethod::SurrogateKol: *out = CWLAB_SURROGATE_KOL; break;
      case cwlab::RateMethod::Smooth: *out = CWLAB_SMOOTH; break;
    }
  });
}

const char* cwlab_method_name(cwlab_method m) {
  try {
    return cwlab::method_name(to_method(m));
  } catch (...) {
    return "unknown";
  }
}

double cwlab_regime_rescale(cwlab_regime r, int64_t n) {
  try {
    return cwlab::regime_rescale(to_regime(r), n);
  } catch (...) {
    return 0.0;
  }
}

double cwlab_phi_beta(double x, double beta) { return cwlab::phi_beta(x, beta); }

cwlab_status cwlab_critical_point(double beta, double* x_beta, double* m_beta,
                                  double* phi_second) {
  return guard([&] {
    const auto cp = cwlab::solve_critical_point(beta);
    if (x_beta) *x_beta = cp.x_beta;
    if (m_beta) *m_beta = cp.m_beta;
    if (phi_second) *phi_second = cp.phi_second;
  });
}

cwlab_status cwlab_mixture_build(const cwlab_params* p, double tail_tol, int grid_points,
                                 cwlab_mixture** out) {
  CWLAB_REQUIRE(p);
  CWLAB_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    auto m = cwlab::DeFinettiMeasure::build(to_params(p),
                                            tail_tol > 0.0 ? tail_tol : cwlab::kDefaultTailTol,
                                            grid_points > 0 ? grid_points : cwlab::kDefaultGridPoints);
    *out = new cwlab_mixture{std::move(m)};
  });
}

void cwlab_mixture_free(cwlab_mixture* m) { delete m; }

cwlab_status cwlab_mixture_log_normalizer(const cwlab_mixture* m, double* out) {
  CWLAB_REQUIRE(m);
  CWLAB_REQUIRE(out);
  *out = m->m.log_normalizer();
  return CWLAB_OK;
}

cwlab_status cwlab_mixture_truncation_error(const cwlab_mixture* m, double* out) {
  CWLAB_REQUIRE(m);
  CWLAB_REQUIRE(out);
  *out = m->m.truncation_error();
  return CWLAB_OK;
}

cwlab_status cwlab_mixture_density(const cwlab_mixture* m, double x, double* out) {
  CWLAB_REQUIRE(m);
  CWLAB_REQUIRE(out);
  return guard([&] { *out = m->m.density(x); });
}

cwlab_status cwlab_mixture_cdf(const cwlab_mixture* m, double x, double* out) {
  CWLAB_REQUIRE(m);
  CWLAB_REQUIRE(out);
  return guard([&] { *out = m->m.cdf(x); });
}

cwlab_status cwlab_mixture_quantile(const cwlab_mixture* m, double u, double* out) {
  CWLAB_REQUIRE(m);
  CWLAB_REQUIRE(out);
  return guard([&] { *out = m->m.quantile(u); });
}

cwlab_status cwlab_pmf_exact(const cwlab_params* p, cwlab_pmf** out) {
  CWLAB_REQUIRE(p);
  CWLAB_REQUIRE(out);
  *out = nullptr;
  return guard([&] { *out = new cwlab_pmf{cwlab::exact_pmf(to_params(p))}; });
}

cwlab_status cwlab_pmf_mixture(const cwlab_params* p, const cwlab_mixture* m, cwlab_pmf** out) {
  CWLAB_REQUIRE(p);
  CWLAB_REQUIRE(m);
  CWLAB_REQUIRE(out);
  *out = nullptr;
  return guard([&] { *out = new cwlab_pmf{cwlab::mixture_pmf(to_params(p), m->m)}; });
}

void cwlab_pmf_free(cwlab_pmf* pmf) { delete pmf; }

int64_t cwlab_pmf_size(const cwlab_pmf* pmf) {
  return pmf ? static_cast<int64_t>(pmf->p.size()) : 0;
}

cwlab_status cwlab_pmf_atom(const cwlab_pmf* pmf, int64_t j, int64_t* value, double* prob) {
  CWLAB_REQUIRE(pmf);
  if (j < 0 || j >= static_cast<int64_t>(pmf->p.size()))
    return fail(CWLAB_ERR_RANGE, "atom index " + std::to_string(j) + " out of range");
  if (value) *value = pmf->p.value(static_cast<std::size_t>(j));
  if (prob) *prob = pmf->p.probs[static_cast<std::size_t>(j)];
  return CWLAB_OK;
}

cwlab_status cwlab_pmf_cdf(const cwlab_pmf* pmf, double x, double rescale, double* out) {
  CWLAB_REQUIRE(pmf);
  CWLAB_REQUIRE(out);
  return guard([&] { *out = cwlab::exact_cdf(pmf->p, x, rescale); });
}

cwlab_status cwlab_pmf_moment(const cwlab_pmf* pmf, int k, double* out) {
  CWLAB_REQUIRE(pmf);
  CWLAB_REQUIRE(out);
  return guard([&] { *out = cwlab::exact_moment(pmf->p, k); });
}

cwlab_status cwlab_limit_for(const cwlab_params* p, cwlab_regime regime, cwlab_limit** out) {
  CWLAB_REQUIRE(p);
  CWLAB_REQUIRE(out);
  *out = nullptr;
  return guard([&] { *out = new cwlab_limit{cwlab::limit_law_for(to_params(p), to_regime(regime))}; });
}

void cwlab_limit_free(cwlab_limit* l) { delete l; }

cwlab_status cwlab_limit_cdf(const cwlab_limit* l, double x, double* out) {
  CWLAB_REQUIRE(l);
  CWLAB_REQUIRE(out);
  return guard([&] { *out = l->l.cdf(x); });
}

cwlab_status cwlab_limit_normalizer(const cwlab_limit* l, double* out) {
  CWLAB_REQUIRE(l);
  CWLAB_REQUIRE(out);
  *out = l->l.normalizer();
  return CWLAB_OK;
}

cwlab_status cwlab_limit_moment(const cwlab_limit* l, int k, double* out) {
  CWLAB_REQUIRE(l);
  CWLAB_REQUIRE(out);
  return guard([&] { *out = l->l.moment(k); });
}

cwlab_status cwlab_rng_new(uint64_t seed, cwlab_rng** out) {
  CWLAB_REQUIRE(out);
  *out = nullptr;
  return guard([&] { *out = new cwlab_rng{cwlab::RngStream(seed)}; });
}

cwlab_status cwlab_rng_split(const cwlab_rng* parent, uint64_t index, cwlab_rng** out) {
  CWLAB_REQUIRE(parent);
  CWLAB_REQUIRE(out);
  *out = nullptr;
  return guard([&] { *out = new cwlab_rng{parent->r.split(index)}; });
}

void cwlab_rng_free(cwlab_rng* r) { delete r; }

cwlab_status cwlab_sample(const cwlab_params* p, const cwlab_mixture* m, cwlab_rng* rng,
                          cwlab_sampler kind, int64_t count, double* out) {
  CWLAB_REQUIRE(p);
  CWLAB_REQUIRE(m);
  CWLAB_REQUIRE(rng);
  if (count < 0) return fail(CWLAB_ERR_CONFIG, "sample count must be nonnegative");
  if (count > 0 && !out) return fail(CWLAB_ERR_NULL, "null argument: out");
  return guard([&] {
    const auto params = to_params(p);
    if (!(m->m.params() == params)) throw cwlab::ConfigError("mixing measure was built for other params");
    for (int64_t i = 0; i < count; ++i) {
      switch (kind) {
        case CWLAB_SAMPLE_T: out[i] = cwlab::sample_T(m->m, rng->r); break;
        case CWLAB_SAMPLE_MAGNETISATION:
          out[i] = static_cast<double>(cwlab::sample_magnetisation(params, m->m, rng->r));
          break;
        case CWLAB_SAMPLE_SURROGATE: out[i] = cwlab::sample_surrogate(params, m->m, rng->r); break;
        case CWLAB_SAMPLE_POISSON:
          out[i] = static_cast<double>(cwlab::sample_poisson_surrogate(params, m->m, rng->r));
          break;
        default: throw cwlab::ConfigError("unknown sampler code");
      }
    }
  });
}

cwlab_status cwlab_surrogate_cdf(const cwlab_params* p, const cwlab_mixture* m, double x,
                                 double rescale, double* out) {
  CWLAB_REQUIRE(p);
  CWLAB_REQUIRE(m);
  CWLAB_REQUIRE(out);
  return guard([&] { *out = cwlab::surrogate_cdf(to_params(p), m->m, x, rescale); });
}

cwlab_status cwlab_coupled_pair(double p, double q, int64_t n, cwlab_rng* rng, int64_t* s_p,
                                int64_t* s_q) {
  CWLAB_REQUIRE(rng);
  return guard([&] {
    const auto c = cwlab::sample_coupled_pair(p, q, n, rng->r);
    if (s_p) *s_p = c.s_p;
    if (s_q) *s_q = c.s_q;
  });
}

cwlab_status cwlab_chain(const cwlab_params* p, int64_t steps, int64_t burn_in, cwlab_rng* rng,
                         int64_t* out) {
  CWLAB_REQUIRE(p);
  CWLAB_REQUIRE(rng);
  if (steps > 0 && !out) return fail(CWLAB_ERR_NULL, "null argument: out");
  return guard([&] {
    const auto params = to_params(p);
    const auto traj = cwlab::fixed_point_chain(
        params, steps, burn_in < 0 ? cwlab::default_burn_in(params.n) : burn_in, rng->r);
    for (std::size_t i = 0; i < traj.size(); ++i) out[i] = traj[i];
  });
}

cwlab_status cwlab_distance_series(const cwlab_rate_spec* spec, const int64_t* n_grid, size_t len,
                                   double* out) {
  CWLAB_REQUIRE(spec);
  if (len > 0 && (!n_grid || !out)) return fail(CWLAB_ERR_NULL, "null grid or output");
  return guard([&] {
    const auto series = cwlab::distance_series(to_spec(spec, n_grid, len));
    for (std::size_t i = 0; i < series.size(); ++i) out[i] = series[i].second;
  });
}

cwlab_status cwlab_fit_rate(const double* n, const double* d, size_t len, double* slope,
                            double* intercept, double* max_residual) {
  if (len > 0 && (!n || !d)) return fail(CWLAB_ERR_NULL, "null series");
  return guard([&] {
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < len; ++i) pts.emplace_back(n[i], d[i]);
    const auto fit = cwlab::fit_rate(pts);
    if (slope) *slope = fit.slope;
    if (intercept) *intercept = fit.intercept;
    if (max_residual) *max_residual = fit.max_abs_residual;
  });
}

cwlab_status cwlab_slope_window(cwlab_regime r, cwlab_method m, double* lo, double* hi) {
  return guard([&] {
    const auto w = cwlab::slope_window(to_regime(r), to_method(m));
    if (lo) *lo = w.first;
    if (hi) *hi = w.second;
  });
}

size_t cwlab_check_count(void) { return cwlab::check_names().size(); }

const char* cwlab_check_name(size_t i) {
  const auto& v = cwlab::check_names();
  return i < v.size() ? v[i].c_str() : nullptr;
}

size_t cwlab_default_suite_count(void) { return cwlab::default_suite().size(); }

const char* cwlab_default_suite_name(size_t i) {
  const auto& v = cwlab::default_suite();
  return i < v.size() ? v[i].c_str() : nullptr;
}

cwlab_status cwlab_check_run(const char* name, const cwlab_check_options* opts,
                             cwlab_report** out) {
  CWLAB_REQUIRE(name);
  CWLAB_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    cwlab::CheckOptions o;
    if (opts) {
      if (opts->has_n) o.n = opts->n;
      if (opts->has_beta) o.beta = opts->beta;
      if (opts->has_gamma) o.gamma = opts->gamma;
      if (opts->has_p) o.p = opts->p;
      if (opts->has_q) o.q = opts->q;
      if (opts->has_slack) o.slack = opts->slack;
      if (opts->n_grid) o.n_grid = std::vector<std::int64_t>(opts->n_grid, opts->n_grid + opts->n_grid_len);
    }
    *out = new cwlab_report{cwlab::run_named_check(name, o)};
  });
}

cwlab_status cwlab_rate_check(const cwlab_rate_spec* spec, const int64_t* n_grid, size_t len,
                              cwlab_report** out) {
  CWLAB_REQUIRE(spec);
  CWLAB_REQUIRE(out);
  *out = nullptr;
  return guard([&] { *out = new cwlab_report{cwlab::check_regime_rate(to_spec(spec, n_grid, len))}; });
}

void cwlab_report_free(cwlab_report* r) { delete r; }

const char* cwlab_report_name(const cwlab_report* r) { return r ? r->r.name.c_str() : ""; }

int cwlab_report_passed(const cwlab_report* r) { return r && r->r.passed ? 1 : 0; }

const char* cwlab_report_detail(const cwlab_report* r) { return r ? r->r.detail.c_str() : ""; }

size_t cwlab_report_param_count(const cwlab_report* r) { return r ? r->r.params.size() : 0; }

const char* cwlab_report_param_key(const cwlab_report* r, size_t i) {
  return r && i < r->r.params.size() ? r->r.params[i].first.c_str() : nullptr;
}

const char* cwlab_report_param_value(const cwlab_report* r, size_t i) {
  return r && i < r->r.params.size() ? r->r.params[i].second.c_str() : nullptr;
}

size_t cwlab_report_observed_count(const cwlab_report* r) { return r ? r->r.observed.size() : 0; }

double cwlab_report_observed(const cwlab_report* r, size_t i) {
  return r && i < r->r.observed.size() ? r->r.observed[i] : 0.0;
}

size_t cwlab_report_target_count(const cwlab_report* r) { return r ? r->r.target.size() : 0; }

double cwlab_report_target(const cwlab_report* r, size_t i) {
  return r && i < r->r.target.size() ? r->r.target[i] : 0.0;
}

int cwlab_worker_count(void) { return cwlab::worker_count(); }

}  // extern "C"
