#include <doctest.h>

#include <cmath>
#include <vector>

#include "cwlab/definetti.hpp"
#include "cwlab/error.hpp"
#include "cwlab/functions.hpp"
#include "cwlab/limit_law.hpp"
#include "cwlab/params.hpp"
#include "oracles.hpp"

using namespace cwlab;

TEST_CASE("params validation and effective beta") {
  CHECK(ModelParams::make(10, 0.7).effective_beta() == doctest::Approx(0.7));
  CHECK(ModelParams::window(100, 2.0).effective_beta() == doctest::Approx(0.8));
  CHECK_THROWS_AS(ModelParams::make(0, 0.5).validate(), ConfigError);
  CHECK_THROWS_AS(ModelParams::make(10, 0.0).validate(), ConfigError);
  CHECK_THROWS_AS(ModelParams::make(10, -1.0).validate(), ConfigError);
  // 1 - 5/sqrt(4) < 0
  CHECK_THROWS_AS(ModelParams::window(4, 5.0).validate(), ConfigError);
  CHECK_NOTHROW(ModelParams::window(100, -3.0).validate());
}

TEST_CASE("phi_beta") {
  CHECK(phi_beta(0.0, 0.5) == 0.0);
  for (double x : {0.1, 0.7, 2.5, 30.0, 800.0}) CHECK(phi_beta(-x, 1.3) == phi_beta(x, 1.3));
  // log cosh stays finite far out
  CHECK(std::isfinite(phi_beta(1e4, 2.0)));
  CHECK(log_cosh(1e4) == doctest::Approx(1e4 - std::log(2.0)));

  SUBCASE("nonnegative with a unique zero for beta <= 1") {
    for (double beta : {0.3, 0.8, 1.0})
      for (double x = -6.0; x <= 6.0; x += 0.01) {
        if (std::fabs(x) < 1e-9) continue;
        CHECK(phi_beta(x, beta) > 0.0);
      }
  }
  SUBCASE("stationary at x_beta for beta = 2") {
    const double x = oracle::bisect([](double y) { return std::tanh(y) - y / 2.0; }, 1e-3, 2.0);
    CHECK(std::fabs(phi_beta_prime(x, 2.0)) < 1e-10);
    CHECK(x == doctest::Approx(1.915).epsilon(1e-3));
    for (double d : {1e-3, 1e-2, 0.1, 0.5}) {
      CHECK(phi_beta(x, 2.0) < phi_beta(x + d, 2.0));
      CHECK(phi_beta(x, 2.0) < phi_beta(x - d, 2.0));
    }
  }
}

TEST_CASE("logistic pair") {
  CHECK(logistic(0.0) == 0.5);
  CHECK(std::fabs(logistic_inv(logistic(1.3)) - 1.3) < 1e-12);
  for (double a : {0.2, 1.0, 5.0, 17.0}) CHECK(logistic(-a) + logistic(a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(logistic_inv(0.0), DomainError);
  CHECK_THROWS_AS(logistic_inv(1.0), DomainError);
  CHECK(std::exp(log_logistic(-40.0)) == doctest::Approx(logistic(-40.0)).epsilon(1e-12));
}

TEST_CASE("critical point") {
  CHECK_THROWS_AS(solve_critical_point(1.0), NoPositiveRoot);
  CHECK_THROWS_AS(solve_critical_point(0.5), NoPositiveRoot);
  const double m_oracle = oracle::bisect([](double m) { return std::tanh(2.0 * m) - m; }, 0.1, 1.0);
  const auto cp = solve_critical_point(2.0);
  CHECK(std::fabs(cp.m_beta - m_oracle) < 1e-12);
  CHECK(cp.m_beta == doctest::Approx(0.95750).epsilon(1e-5));
  for (double beta : {1.01, 1.1, 1.5, 2.0, 5.0, 40.0}) {
    const auto c = solve_critical_point(beta);
    CHECK(std::fabs(c.m_beta - std::tanh(beta * c.m_beta)) < 1e-12);
    CHECK(std::fabs(std::tanh(c.x_beta) - c.x_beta / beta) < 1e-12);
    CHECK(c.phi_second == doctest::Approx(-(beta - 1.0) / beta + c.m_beta * c.m_beta));
    CHECK(c.phi_second > 0.0);
  }
}

TEST_CASE("gamma function identities") {
  const double g14 = lanczos_gamma(0.25), g34 = lanczos_gamma(0.75);
  CHECK(std::fabs(g14 * g34 - kPi / std::sin(kPi / 4.0)) < 1e-10);
  CHECK(std::fabs(lanczos_gamma(1.25) - 0.25 * g14) < 1e-10);
  CHECK(std::fabs(gamma_quarter() / std::tgamma(0.25) - 1.0) < 1e-10);
  const double zf = oracle::trapezoid([](double x) { return std::exp(-x * x * x * x / 12.0); }, -12.0, 12.0, 20000);
  CHECK(std::fabs(quartic_normalizer_closed_form() / zf - 1.0) < 1e-8);
}

TEST_CASE("limit laws") {
  SUBCASE("gaussian") {
    const auto g = LimitLaw::gaussian(0.5);
    CHECK(g.moment(2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(g.cdf(1.0) == doctest::Approx(normal_cdf(1.0 / std::sqrt(2.0))).epsilon(1e-14));
    CHECK_THROWS_AS(LimitLaw::gaussian(1.0), RegimeMismatch);
  }
  SUBCASE("quartic normalizer matches the closed form") {
    const auto f = LimitLaw::quartic();
    CHECK(std::fabs(f.normalizer() / quartic_normalizer_closed_form() - 1.0) < 1e-10);
    CHECK(f.normalizer() == doctest::Approx(3.3740).epsilon(1e-4));
    const double m2 = oracle::trapezoid(
        [](double x) { return x * x * std::exp(-x * x * x * x / 12.0); }, -12.0, 12.0, 20000);
    CHECK(std::fabs(f.moment(2) - m2 / f.normalizer()) < 1e-10);
  }
  SUBCASE("window at gamma = 0 is the critical law") {
    const auto f = LimitLaw::quartic(), f0 = LimitLaw::quartic_gamma(0.0);
    for (double x = -5.0; x <= 5.0; x += 0.05) CHECK(std::fabs(f.cdf(x) - f0.cdf(x)) < 1e-12);
  }
  SUBCASE("continuous kinds: normalized, monotone, symmetric") {
    for (const auto& law : {LimitLaw::gaussian(0.3), LimitLaw::quartic(), LimitLaw::quartic_gamma(1.0),
                            LimitLaw::quartic_gamma(-1.0)}) {
      const double mass = oracle::trapezoid([&](double x) { return law.pdf(x); }, -30.0, 30.0, 60000);
      CHECK(std::fabs(mass - 1.0) < 1e-12);
      CHECK(law.cdf(-1e3) < 1e-15);
      CHECK(law.cdf(1e3) == doctest::Approx(1.0).epsilon(1e-15));
      double prev = 0.0;
      for (double x = -6.0; x <= 6.0; x += 0.01) {
        const double c = law.cdf(x);
        CHECK(c >= prev);
        prev = c;
        CHECK(std::fabs(law.cdf(-x) - (1.0 - law.cdf_left(x))) < 1e-12);
      }
      CHECK(std::fabs(law.moment(1)) < 1e-13);
    }
  }
  SUBCASE("two-point law") {
    const auto b = LimitLaw::two_point(0.9575);
    CHECK(!b.has_pdf());
    CHECK_THROWS_AS(b.pdf(0.0), DomainError);
    CHECK(b.cdf(-0.9575) == 0.5);
    CHECK(b.cdf_left(-0.9575) == 0.0);
    CHECK(b.cdf(0.0) == 0.5);
    CHECK(b.cdf_left(0.9575) == 0.5);
    CHECK(b.cdf(0.9575) == 1.0);
    CHECK(b.cdf(-0.5) == 1.0 - b.cdf_left(0.5));
    CHECK(b.moment(2) == doctest::Approx(0.9575 * 0.9575));
  }
  SUBCASE("regime dispatch") {
    CHECK(limit_law_for(ModelParams::make(100, 0.5), Regime::Subcritical).kind() == LimitKind::GaussianSubcritical);
    CHECK(limit_law_for(ModelParams::make(100, 1.0), Regime::Critical).kind() == LimitKind::QuarticF);
    CHECK(limit_law_for(ModelParams::window(100, 1.0), Regime::Window).kind() == LimitKind::QuarticFGamma);
    const auto sup = limit_law_for(ModelParams::make(100, 2.0), Regime::Supercritical);
    CHECK(sup.parameter() == doctest::Approx(solve_critical_point(2.0).m_beta));
    CHECK_THROWS_AS(limit_law_for(ModelParams::make(100, 1.5), Regime::Subcritical), RegimeMismatch);
    CHECK_THROWS_AS(limit_law_for(ModelParams::make(100, 0.5), Regime::Window), RegimeMismatch);
    CHECK_THROWS_AS(limit_law_for(ModelParams::make(100, 0.5), Regime::Supercritical), RegimeMismatch);
    CHECK_THROWS_AS(parse_regime("hot"), ConfigError);
  }
}

TEST_CASE("mixing measure") {
  SUBCASE("argument validation") {
    const auto p = ModelParams::make(10, 0.5);
    CHECK_THROWS_AS(DeFinettiMeasure::build(p, 1e-14, 32), ConfigError);
    CHECK_THROWS_AS(DeFinettiMeasure::build(p, 1e-3), ConfigError);
    CHECK_THROWS_AS(DeFinettiMeasure::build(p, 0.0), ConfigError);
  }
  SUBCASE("n = 1 density integrates to one") {
    const auto mix = DeFinettiMeasure::build(ModelParams::make(1, 0.5));
    const double L = mix.half_width();
    const double mass = oracle::trapezoid([&](double x) { return mix.density(x); }, -L, L, 200000);
    CHECK(std::fabs(mass - 1.0) < 1e-12);
    CHECK(mix.truncation_error() < 1e-14);
  }
  SUBCASE("normalizer against an independent quadrature") {
    for (auto [n, beta] : std::vector<std::pair<std::int64_t, double>>{{1, 0.5}, {10, 0.9}, {100, 1.0}, {400, 2.0}}) {
      const auto mix = DeFinettiMeasure::build(ModelParams::make(n, beta));
      const double z = oracle::trapezoid(
          [&](double x) { return std::exp(-static_cast<double>(n) * phi_beta(x, beta)); }, -40.0, 40.0, 400000);
      CHECK(std::fabs(mix.log_normalizer() - std::log(z)) < 1e-11);
    }
  }
  SUBCASE("symmetry, monotonicity, normalization") {
    for (const auto& p : {ModelParams::make(1, 0.5), ModelParams::make(50, 0.9), ModelParams::make(1000, 1.0),
                          ModelParams::window(400, -1.0), ModelParams::make(2000, 1.5)}) {
      const auto mix = DeFinettiMeasure::build(p);
      double s = 0.0;
      for (double w : mix.node_weights()) s += w;
      CHECK(std::fabs(s - 1.0) < 1e-12);
      CHECK(std::fabs(mix.expect([](double) { return 1.0; }) - 1.0) < 1e-12);
      const auto cdf = mix.cdf_grid();
      for (std::size_t i = 1; i < cdf.size(); ++i) CHECK(cdf[i] >= cdf[i - 1]);
      const double L = mix.half_width();
      for (double u = -1.0; u <= 1.0; u += 0.01) {
        const double x = u * L;
        CHECK(std::fabs(mix.density(-x) - mix.density(x)) <= 1e-12 * std::max(1.0, mix.density(x)));
        CHECK(std::fabs(mix.cdf(-x) + mix.cdf(x) - 1.0) < 1e-10);
      }
      for (double u : {1e-6, 0.01, 0.3, 0.5, 0.77, 0.999}) CHECK(mix.cdf(mix.quantile(u)) == doctest::Approx(u).epsilon(1e-9));
    }
  }
  SUBCASE("pushforwards to t and p") {
    const auto mix = DeFinettiMeasure::build(ModelParams::make(30, 0.8));
    const double mass_t = oracle::trapezoid([&](double t) { return mix.density_t(t); }, -1.0 + 1e-12, 1.0 - 1e-12, 200000);
    CHECK(mass_t == doctest::Approx(1.0).epsilon(1e-8));
    for (double t : {-0.7, -0.1, 0.2, 0.6}) {
      const double p = 0.5 * (1.0 + t);
      CHECK(mix.density_p(p) == doctest::Approx(2.0 * mix.density_t(t)).epsilon(1e-12));
      CHECK(mix.cdf_t(t) == doctest::Approx(mix.cdf(std::atanh(t))).epsilon(1e-14));
    }
  }
  SUBCASE("subcritical normalizer lies just below the Gaussian value") {
    const double beta = 0.5, c = 1.0 / beta - 1.0;
    const std::int64_t n = 100;
    const double z = std::exp(DeFinettiMeasure::build(ModelParams::make(n, beta)).log_normalizer());
    const double dev = std::sqrt(static_cast<double>(n)) * z * std::sqrt(c / (2.0 * kPi)) - 1.0;
    CHECK(dev <= 0.0);
    CHECK(dev > -std::pow(c, -4.5) / (4.0 * n));
  }
  SUBCASE("critical normalizer scales like n^{-1/4} Z_F") {
    const double z = std::exp(DeFinettiMeasure::build(ModelParams::make(10000, 1.0)).log_normalizer());
    CHECK(std::fabs(std::pow(10000.0, 0.25) * z / quartic_normalizer_closed_form() - 1.0) < 0.02);
  }
  SUBCASE("supercritical Laplace constant") {
    const double beta = 2.0;
    const auto cp = solve_critical_point(beta);
    const double target = 2.0 * std::sqrt(2.0 * kPi / cp.phi_second);
    std::vector<double> devs;
    for (std::int64_t n : {100, 1000, 10000}) {
      const auto mix = DeFinettiMeasure::build(ModelParams::make(n, beta));
      const double a = std::exp(0.5 * std::log(double(n)) + mix.log_normalizer() + n * phi_beta(cp.x_beta, beta));
      devs.push_back(std::fabs(a / target - 1.0));
    }
    CHECK(devs[1] < devs[0]);
    CHECK(devs[2] < devs[1]);
    CHECK(devs[2] < 0.05);
  }
}
