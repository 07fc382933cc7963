#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "cwlab/cwlab.h"

namespace {

cwlab_params params(int64_t n, double beta) {
  cwlab_params p{};
  p.n = n;
  p.beta = beta;
  return p;
}

}  // namespace

TEST_CASE("status reporting") {
  CHECK(std::strlen(cwlab_version()) > 0);
  CHECK(std::string(cwlab_status_name(CWLAB_OK)) == "ok");
  auto bad = params(0, 0.5);
  CHECK(cwlab_params_validate(&bad) == CWLAB_ERR_CONFIG);
  CHECK(std::string(cwlab_last_error()).find("n") != std::string::npos);
  CHECK(cwlab_params_validate(nullptr) == CWLAB_ERR_NULL);
  double x = 0, m = 0, s = 0;
  CHECK(cwlab_critical_point(0.9, &x, &m, &s) == CWLAB_ERR_NO_POSITIVE_ROOT);
  CHECK(cwlab_critical_point(2.0, &x, &m, &s) == CWLAB_OK);
  CHECK(m == doctest::Approx(0.9575040240772688).epsilon(1e-12));
  cwlab_regime r;
  CHECK(cwlab_parse_regime("warm", &r) == CWLAB_ERR_CONFIG);
  CHECK(cwlab_parse_regime("window", &r) == CWLAB_OK);
  CHECK(r == CWLAB_WINDOW);
  CHECK(std::string(cwlab_regime_name(CWLAB_SUPERCRITICAL)) == "supercritical");
  cwlab_method me;
  CHECK(cwlab_parse_method("smooth", &me) == CWLAB_OK);
  CHECK(me == CWLAB_SMOOTH);
  CHECK(cwlab_regime_rescale(CWLAB_CRITICAL, 16) == doctest::Approx(8.0));
  CHECK(cwlab_phi_beta(0.0, 0.5) == 0.0);
}

TEST_CASE("laws through handles") {
  auto p = params(2, 1.0);
  cwlab_pmf* pmf = nullptr;
  REQUIRE(cwlab_pmf_exact(&p, &pmf) == CWLAB_OK);
  CHECK(cwlab_pmf_size(pmf) == 3);
  int64_t v = 0;
  double prob = 0;
  CHECK(cwlab_pmf_atom(pmf, 0, &v, &prob) == CWLAB_OK);
  CHECK(v == -2);
  const double e = std::exp(1.0);
  CHECK(prob == doctest::Approx(e / (2 * e + 2)).epsilon(1e-14));
  CHECK(cwlab_pmf_atom(pmf, 3, &v, &prob) == CWLAB_ERR_RANGE);
  double m2 = 0;
  CHECK(cwlab_pmf_moment(pmf, 2, &m2) == CWLAB_OK);
  CHECK(m2 == doctest::Approx(2.92423).epsilon(1e-5));
  double c = 0;
  CHECK(cwlab_pmf_cdf(pmf, 0.0, 1.0, &c) == CWLAB_OK);
  CHECK(c == doctest::Approx(e / (2 * e + 2) + 1 / (e + 1)));

  cwlab_mixture* mix = nullptr;
  REQUIRE(cwlab_mixture_build(&p, 0.0, 0, &mix) == CWLAB_OK);
  cwlab_pmf* mp = nullptr;
  REQUIRE(cwlab_pmf_mixture(&p, mix, &mp) == CWLAB_OK);
  for (int64_t j = 0; j < 3; ++j) {
    double a = 0, b = 0;
    cwlab_pmf_atom(pmf, j, nullptr, &a);
    cwlab_pmf_atom(mp, j, nullptr, &b);
    CHECK(std::fabs(a - b) < 1e-10);
  }
  double half = 0;
  CHECK(cwlab_mixture_cdf(mix, 0.0, &half) == CWLAB_OK);
  CHECK(half == doctest::Approx(0.5).epsilon(1e-12));
  double q = 0;
  CHECK(cwlab_mixture_quantile(mix, 1.5, &q) != CWLAB_OK);
  auto other = params(3, 1.0);
  cwlab_pmf* wrong = nullptr;
  CHECK(cwlab_pmf_mixture(&other, mix, &wrong) == CWLAB_ERR_CONFIG);
  CHECK(wrong == nullptr);
  cwlab_pmf_free(mp);
  cwlab_pmf_free(pmf);
  cwlab_mixture_free(mix);
  cwlab_pmf_free(nullptr);

  auto cp = params(100, 1.0);
  cwlab_limit* lim = nullptr;
  CHECK(cwlab_limit_for(&cp, CWLAB_SUBCRITICAL, &lim) == CWLAB_ERR_REGIME);
  REQUIRE(cwlab_limit_for(&cp, CWLAB_CRITICAL, &lim) == CWLAB_OK);
  double z = 0;
  CHECK(cwlab_limit_normalizer(lim, &z) == CWLAB_OK);
  CHECK(z == doctest::Approx(3.374010197800).epsilon(1e-11));
  cwlab_limit_free(lim);
}

TEST_CASE("sampling through handles is deterministic") {
  auto p = params(50, 0.8);
  cwlab_mixture* mix = nullptr;
  REQUIRE(cwlab_mixture_build(&p, 0.0, 0, &mix) == CWLAB_OK);
  for (auto kind : {CWLAB_SAMPLE_T, CWLAB_SAMPLE_MAGNETISATION, CWLAB_SAMPLE_SURROGATE, CWLAB_SAMPLE_POISSON}) {
    cwlab_rng *a = nullptr, *b = nullptr;
    cwlab_rng_new(99, &a);
    cwlab_rng_new(99, &b);
    std::vector<double> x(500), y(500);
    CHECK(cwlab_sample(&p, mix, a, kind, 500, x.data()) == CWLAB_OK);
    CHECK(cwlab_sample(&p, mix, b, kind, 500, y.data()) == CWLAB_OK);
    CHECK(x == y);
    cwlab_rng_free(a);
    cwlab_rng_free(b);
  }
  cwlab_rng* r = nullptr;
  cwlab_rng_new(1, &r);
  CHECK(cwlab_sample(&p, mix, r, CWLAB_SAMPLE_T, -1, nullptr) == CWLAB_ERR_CONFIG);
  int64_t sp = 0, sq = 0;
  CHECK(cwlab_coupled_pair(0.4, 0.4, 30, r, &sp, &sq) == CWLAB_OK);
  CHECK(sp == sq);
  std::vector<int64_t> traj(100);
  CHECK(cwlab_chain(&p, 100, -1, r, traj.data()) == CWLAB_OK);
  for (auto s : traj) CHECK((s + 50) % 2 == 0);
  cwlab_rng* child = nullptr;
  CHECK(cwlab_rng_split(r, 3, &child) == CWLAB_OK);
  cwlab_rng_free(child);
  cwlab_rng_free(r);
  cwlab_mixture_free(mix);
}

TEST_CASE("rates and checks through handles") {
  const double n[] = {64, 128, 256, 512};
  const double d[] = {1.0 / 8, 1.0 / std::sqrt(128.0), 1.0 / 16, 1.0 / std::sqrt(512.0)};
  double slope = 0, icpt = 0, res = 0;
  CHECK(cwlab_fit_rate(n, d, 4, &slope, &icpt, &res) == CWLAB_OK);
  CHECK(slope == doctest::Approx(-0.5).epsilon(1e-12));
  const double bad[] = {1, 0, 1, 1};
  CHECK(cwlab_fit_rate(n, bad, 4, &slope, &icpt, &res) == CWLAB_ERR_DOMAIN);

  cwlab_rate_spec spec{CWLAB_SUBCRITICAL, CWLAB_EXACT_KOL, 0.5, 1.0};
  const int64_t grid[] = {16, 32, 64};
  double out[3];
  CHECK(cwlab_distance_series(&spec, grid, 3, out) == CWLAB_OK);
  CHECK(out[2] < out[0]);
  double lo = 0, hi = 0;
  CHECK(cwlab_slope_window(CWLAB_CRITICAL, CWLAB_EXACT_KOL, &lo, &hi) == CWLAB_OK);
  CHECK(lo == -0.7);

  CHECK(cwlab_check_count() == 15);
  CHECK(cwlab_default_suite_count() == 14);
  CHECK(cwlab_check_name(999) == nullptr);
  cwlab_check_options o{};
  o.has_p = o.has_q = o.has_slack = 1;
  o.p = 0.4;
  o.q = 0.6;
  o.slack = 0.0;
  cwlab_report* rep = nullptr;
  REQUIRE(cwlab_check_run("centered-binomial", &o, &rep) == CWLAB_OK);
  CHECK(cwlab_report_passed(rep) == 0);
  CHECK(std::string(cwlab_report_name(rep)) == "centered-binomial");
  CHECK(cwlab_report_observed_count(rep) == 1);
  CHECK(cwlab_report_target_count(rep) == 2);
  bool saw_slack = false;
  for (size_t i = 0; i < cwlab_report_param_count(rep); ++i)
    saw_slack = saw_slack || std::string(cwlab_report_param_key(rep, i)) == "slack";
  CHECK(saw_slack);
  cwlab_report_free(rep);
  CHECK(cwlab_check_run("nope", nullptr, &rep) == CWLAB_ERR_CONFIG);
  CHECK(cwlab_worker_count() >= 1);
}
