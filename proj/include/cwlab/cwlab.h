/* C interface to the Curie-Weiss magnetisation library.
 *
 * Every object is an opaque handle released by its *_free function. Functions
 * return a cwlab_status; on failure cwlab_last_error() describes the problem
 * (thread-local, valid until the next failing call on the same thread). */
#ifndef CWLAB_H
#define CWLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(CWLAB_BUILDING_LIBRARY)
#define CWLAB_API __attribute__((visibility("default")))
#else
#define CWLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cwlab_status {
  CWLAB_OK = 0,
  CWLAB_ERR_CONFIG = 1,
  CWLAB_ERR_DOMAIN = 2,
  CWLAB_ERR_NUMERICAL = 3,
  CWLAB_ERR_NO_POSITIVE_ROOT = 4,
  CWLAB_ERR_REGIME = 5,
  CWLAB_ERR_INTERNAL = 6,
  CWLAB_ERR_NULL = 7,
  CWLAB_ERR_RANGE = 8
} cwlab_status;

typedef enum cwlab_regime {
  CWLAB_SUBCRITICAL = 0,
  CWLAB_CRITICAL = 1,
  CWLAB_WINDOW = 2,
  CWLAB_SUPERCRITICAL = 3
} cwlab_regime;

typedef enum cwlab_method {
  CWLAB_EXACT_KOL = 0,
  CWLAB_SURROGATE_KOL = 1,
  CWLAB_SMOOTH = 2
} cwlab_method;

typedef enum cwlab_sampler {
  CWLAB_SAMPLE_T = 0,             /* T = tanh(X), X from the mixing law */
  CWLAB_SAMPLE_MAGNETISATION = 1, /* spin sum via the mixture */
  CWLAB_SAMPLE_SURROGATE = 2,     /* sqrt(n) G sqrt(1 - T^2) + n T */
  CWLAB_SAMPLE_POISSON = 3        /* Poisson(n (1 + T) / 2) */
} cwlab_sampler;

/* One model instance. has_gamma != 0 selects beta = 1 - gamma / sqrt(n). */
typedef struct cwlab_params {
  int64_t n;
  double beta;
  int has_gamma;
  double gamma;
  double mu;
} cwlab_params;

typedef struct cwlab_rate_spec {
  cwlab_regime regime;
  cwlab_method method;
  double beta;  /* subcritical and supercritical */
  double gamma; /* window */
} cwlab_rate_spec;

/* Optional overrides for named checks; unset fields use the defaults. */
typedef struct cwlab_check_options {
  int has_n;
  int64_t n;
  int has_beta;
  double beta;
  int has_gamma;
  double gamma;
  int has_p;
  double p;
  int has_q;
  double q;
  int has_slack;
  double slack;
  const int64_t* n_grid; /* NULL for the default grid */
  size_t n_grid_len;
} cwlab_check_options;

typedef struct cwlab_mixture cwlab_mixture;
typedef struct cwlab_pmf cwlab_pmf;
typedef struct cwlab_limit cwlab_limit;
typedef struct cwlab_rng cwlab_rng;
typedef struct cwlab_report cwlab_report;

CWLAB_API const char* cwlab_version(void);
CWLAB_API const char* cwlab_last_error(void);
CWLAB_API const char* cwlab_status_name(cwlab_status s);

CWLAB_API cwlab_status cwlab_params_validate(const cwlab_params* p);
CWLAB_API cwlab_status cwlab_parse_regime(const char* s, cwlab_regime* out);
CWLAB_API const char* cwlab_regime_name(cwlab_regime r);
CWLAB_API cwlab_status cwlab_parse_method(const char* s, cwlab_method* out);
CWLAB_API const char* cwlab_method_name(cwlab_method m);
CWLAB_API double cwlab_regime_rescale(cwlab_regime r, int64_t n);

/* Scalar functions. */
CWLAB_API double cwlab_phi_beta(double x, double beta);
CWLAB_API cwlab_status cwlab_critical_point(double beta, double* x_beta, double* m_beta,
                                            double* phi_second);

/* Mixing measure. tail_tol <= 0 and grid_points <= 0 select the defaults. */
CWLAB_API cwlab_status cwlab_mixture_build(const cwlab_params* p, double tail_tol,
                                           int grid_points, cwlab_mixture** out);
CWLAB_API void cwlab_mixture_free(cwlab_mixture* m);
CWLAB_API cwlab_status cwlab_mixture_log_normalizer(const cwlab_mixture* m, double* out);
CWLAB_API cwlab_status cwlab_mixture_truncation_error(const cwlab_mixture* m, double* out);
CWLAB_API cwlab_status cwlab_mixture_density(const cwlab_mixture* m, double x, double* out);
CWLAB_API cwlab_status cwlab_mixture_cdf(const cwlab_mixture* m, double x, double* out);
CWLAB_API cwlab_status cwlab_mixture_quantile(const cwlab_mixture* m, double u, double* out);

/* Laws of the spin sum on {-n, -n+2, ..., n}. */
CWLAB_API cwlab_status cwlab_pmf_exact(const cwlab_params* p, cwlab_pmf** out);
CWLAB_API cwlab_status cwlab_pmf_mixture(const cwlab_params* p, const cwlab_mixture* m,
                                         cwlab_pmf** out);
CWLAB_API void cwlab_pmf_free(cwlab_pmf* pmf);
CWLAB_API int64_t cwlab_pmf_size(const cwlab_pmf* pmf);
CWLAB_API cwlab_status cwlab_pmf_atom(const cwlab_pmf* pmf, int64_t j, int64_t* value,
                                      double* prob);
CWLAB_API cwlab_status cwlab_pmf_cdf(const cwlab_pmf* pmf, double x, double rescale,
                                     double* out);
CWLAB_API cwlab_status cwlab_pmf_moment(const cwlab_pmf* pmf, int k, double* out);

/* Limit laws. */
CWLAB_API cwlab_status cwlab_limit_for(const cwlab_params* p, cwlab_regime regime,
                                       cwlab_limit** out);
CWLAB_API void cwlab_limit_free(cwlab_limit* l);
CWLAB_API cwlab_status cwlab_limit_cdf(const cwlab_limit* l, double x, double* out);
CWLAB_API cwlab_status cwlab_limit_normalizer(const cwlab_limit* l, double* out);
CWLAB_API cwlab_status cwlab_limit_moment(const cwlab_limit* l, int k, double* out);

/* Random streams. */
CWLAB_API cwlab_status cwlab_rng_new(uint64_t seed, cwlab_rng** out);
CWLAB_API cwlab_status cwlab_rng_split(const cwlab_rng* parent, uint64_t index, cwlab_rng** out);
CWLAB_API void cwlab_rng_free(cwlab_rng* r);

/* Draws `count` values into out[0..count). */
CWLAB_API cwlab_status cwlab_sample(const cwlab_params* p, const cwlab_mixture* m,
                                    cwlab_rng* rng, cwlab_sampler kind, int64_t count,
                                    double* out);
CWLAB_API cwlab_status cwlab_surrogate_cdf(const cwlab_params* p, const cwlab_mixture* m,
                                           double x, double rescale, double* out);
CWLAB_API cwlab_status cwlab_coupled_pair(double p, double q, int64_t n, cwlab_rng* rng,
                                          int64_t* s_p, int64_t* s_q);
/* Fixed-point chain; burn_in < 0 selects 10 n. Writes `steps` states. */
CWLAB_API cwlab_status cwlab_chain(const cwlab_params* p, int64_t steps, int64_t burn_in,
                                   cwlab_rng* rng, int64_t* out);

/* Distances and rate fits. */
CWLAB_API cwlab_status cwlab_distance_series(const cwlab_rate_spec* spec, const int64_t* n_grid,
                                             size_t len, double* out);
CWLAB_API cwlab_status cwlab_fit_rate(const double* n, const double* d, size_t len,
                                      double* slope, double* intercept, double* max_residual);
CWLAB_API cwlab_status cwlab_slope_window(cwlab_regime r, cwlab_method m, double* lo, double* hi);

/* Checks. */
CWLAB_API size_t cwlab_check_count(void);
CWLAB_API const char* cwlab_check_name(size_t i);
CWLAB_API size_t cwlab_default_suite_count(void);
CWLAB_API const char* cwlab_default_suite_name(size_t i);
CWLAB_API cwlab_status cwlab_check_run(const char* name, const cwlab_check_options* opts,
                                       cwlab_report** out);
CWLAB_API cwlab_status cwlab_rate_check(const cwlab_rate_spec* spec, const int64_t* n_grid,
                                        size_t len, cwlab_report** out);
CWLAB_API void cwlab_report_free(cwlab_report* r);
CWLAB_API const char* cwlab_report_name(const cwlab_report* r);
CWLAB_API int cwlab_report_passed(const cwlab_report* r);
CWLAB_API const char* cwlab_report_detail(const cwlab_report* r);
CWLAB_API size_t cwlab_report_param_count(const cwlab_report* r);
CWLAB_API const char* cwlab_report_param_key(const cwlab_report* r, size_t i);
CWLAB_API const char* cwlab_report_param_value(const cwlab_report* r, size_t i);
CWLAB_API size_t cwlab_report_observed_count(const cwlab_report* r);
CWLAB_API double cwlab_report_observed(const cwlab_report* r, size_t i);
CWLAB_API size_t cwlab_report_target_count(const cwlab_report* r);
CWLAB_API double cwlab_report_target(const cwlab_report* r, size_t i);

/* Parallelism used by the library (honours CWLAB_THREADS). */
CWLAB_API int cwlab_worker_count(void);

#ifdef __cplusplus
}
#endif

#endif /* CWLAB_H */
