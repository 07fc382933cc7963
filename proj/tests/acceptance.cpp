// Acceptance run: one PASS/FAIL line per criterion.
//
//   cwlab_acceptance        run every criterion
//   cwlab_acceptance 4 7    run the listed criteria
//
// Exit status is 0 iff every selected criterion passed.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cwlab/definetti.hpp"
#include "cwlab/exact.hpp"
#include "cwlab/functions.hpp"
#include "cwlab/rng.hpp"
#include "cwlab/samplers.hpp"
#include "cwlab/verify.hpp"

using namespace cwlab;

namespace {

struct Outcome {
  bool passed;
  std::string summary;
};

std::string fmt(double v) { return format_double(v); }

std::string series_text(const CheckReport& r) {
  std::string s;
  for (std::size_t i = 0; i < r.observed.size(); ++i) s += (i ? " " : "") + fmt(r.observed[i]);
  return s;
}

Outcome c1_mixture_identity() {
  const std::vector<double> betas{0.25, 0.5, 0.9, 1.0, 1.1, 1.5, 2.0};
  double worst = 0.0;
  for (double beta : betas)
    for (std::int64_t n = 1; n <= 64; ++n) {
      const auto p = ModelParams::make(n, beta);
      const auto ex = exact_pmf(p);
      const auto mx = mixture_pmf(p, DeFinettiMeasure::build(p));
      for (std::size_t j = 0; j < ex.size(); ++j) worst = std::max(worst, std::fabs(ex.probs[j] - mx.probs[j]));
    }
  return {worst < 1e-10, "max atomwise |exact - mixture| = " + fmt(worst) + " (< 1e-10)"};
}

Outcome rate(Regime regime, RateMethod method, double beta, double gamma) {
  RateSpec spec;
  spec.regime = regime;
  spec.method = method;
  spec.beta = beta;
  spec.gamma = gamma;
  spec.n_grid = geometric_grid(64, 8192, 2);
  const auto r = check_regime_rate(spec);
  return {r.passed, std::string(regime_name(regime)) + " " + method_name(method) + " slope " +
                        fmt(r.observed.back()) + " in [" + fmt(r.target[0]) + ", " + fmt(r.target[1]) + "]"};
}

Outcome c5_window() {
  const auto a = rate(Regime::Window, RateMethod::ExactKol, 0.5, 1.0);
  const auto b = rate(Regime::Window, RateMethod::ExactKol, 0.5, -1.0);
  return {a.passed && b.passed, "gamma=+1: " + a.summary + "; gamma=-1: " + b.summary};
}

Outcome c6_supercritical() {
  RateSpec spec;
  spec.regime = Regime::Supercritical;
  spec.method = RateMethod::ExactKol;
  spec.beta = 2.0;
  spec.n_grid = geometric_grid(256, 8192, 2);
  const auto r = check_ratio_decay(spec, 0.7);
  // m = tanh(2 m) by plain bisection
  double lo = 0.5, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::tanh(2.0 * mid) > mid ? lo : hi) = mid;
  }
  const double m = solve_critical_point(2.0).m_beta;
  const bool m_ok = std::fabs(m - 0.95750) <= 1e-5 && std::fabs(m - 0.5 * (lo + hi)) <= 1e-12;
  return {r.passed && m_ok, "d_Kol and 4n ratios [" + series_text(r) + "] (ratios <= 0.7, decreasing); m_beta = " +
                                fmt(m) + " (0.95750 +- 1e-5)"};
}

Outcome c7_smooth() {
  bool ok = true;
  std::string s;
  for (Regime regime : {Regime::Subcritical, Regime::Critical, Regime::Window, Regime::Supercritical}) {
    RateSpec spec;
    spec.regime = regime;
    spec.method = RateMethod::Smooth;
    spec.beta = regime == Regime::Supercritical ? 2.0 : 0.5;
    spec.gamma = 1.0;
    spec.n_grid = {1024, 2048, 4096};
    const auto r = check_ratio_decay(spec, 0.7);
    ok = ok && r.passed;
    s += std::string(s.empty() ? "" : "; ") + regime_name(regime) + " ratio " + fmt(r.observed.back()) +
         (r.passed ? "" : " FAIL");
  }
  return {ok, s + " (each <= 0.7, n = 1024, 2048, 4096)"};
}

Outcome c8_subcritical_bound() {
  int failed = 0, total = 0;
  std::string worst;
  double worst_ratio = 0.0;
  for (double beta : {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9})
    for (std::int64_t n : {10, 100, 1000, 10000}) {
      const auto r = check_Z_subcritical(beta, n);
      ++total;
      if (!r.passed) ++failed;
      const double ratio = r.observed[0] / r.target[0];
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst = "beta=" + fmt(beta) + " n=" + std::to_string(n);
      }
    }
  return {failed == 0, std::to_string(total - failed) + "/" + std::to_string(total) +
                           " grid points inside [0, C^{-9/2}/(4n)]; worst observed/bound = " + fmt(worst_ratio) +
                           " at " + worst};
}

Outcome c9_constants() {
  const std::vector<CheckReport> rs{check_Z_critical(400), check_Z_window(1.0, 400),
                                    check_Z_supercritical(2.0, 400, 2), check_density_max(400)};
  bool ok = true;
  std::string s;
  for (const auto& r : rs) {
    ok = ok && r.passed;
    std::string ratios;
    if (r.name == "z-supercritical") ratios = fmt(r.observed[3]) + "," + fmt(r.observed[4]);
    else if (r.name == "density-max") ratios = fmt(r.observed[4]);
    else ratios = fmt(r.observed[2]);
    s += std::string(s.empty() ? "" : "; ") + r.name + " ratio " + ratios + (r.passed ? "" : " FAIL");
  }
  return {ok, s + " (each <= 0.6)"};
}

Outcome c10_binomials() {
  std::mt19937_64 gen(20240611);
  std::uniform_real_distribution<double> pq(0.01, 0.99);
  std::uniform_int_distribution<std::int64_t> nd(1, 1000);
  int passed = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double p = pq(gen), q = pq(gen);
    const auto n = nd(gen);
    const auto r = check_centered_binomial_distance(p, q, n, 3.0);
    passed += r.passed;
    worst = std::max(worst, r.observed[0] / r.target[0]);
  }
  return {passed == 50, std::to_string(passed) + "/50 triples within bound + 3/sqrt(n); worst d/bound = " + fmt(worst)};
}

double chain_tv(double beta, std::uint64_t seed) {
  const auto p = ModelParams::make(20, beta);
  const auto ex = exact_pmf(p);
  RngStream rng(seed);
  const auto traj = fixed_point_chain(p, 1000000, 10000, rng);
  std::vector<double> hist(21, 0.0);
  for (auto s : traj) hist[static_cast<std::size_t>(spin_to_count(s, 20))] += 1.0;
  double tv = 0.0;
  for (std::size_t j = 0; j < hist.size(); ++j) tv += std::fabs(hist[j] / traj.size() - ex.probs[j]);
  return 0.5 * tv;
}

Outcome c11_chain() {
  const double a = chain_tv(0.8, 1101), b = chain_tv(1.5, 1102);
  return {a < 0.01 && b < 0.02, "TV(beta=0.8) = " + fmt(a) + " (< 0.01); TV(beta=1.5) = " + fmt(b) + " (< 0.02)"};
}

Outcome c12_coupling() {
  const std::vector<std::pair<double, double>> pairs{{0.5, 0.6}, {0.1, 0.9}, {0.3, 0.35}, {0.2, 0.7}, {0.45, 0.46},
                                                     {0.05, 0.5}, {0.6, 0.99}, {0.8, 0.3}, {0.25, 0.75}, {0.01, 0.02}};
  RngStream root(1201);
  int passed = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto rng = root.split(k);
    const auto [p, q] = pairs[k];
    const int draws = 1000000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < draws; ++i) {
      const auto c = sample_coupled_pair(p, q, 1, rng);
      const double d = (c.s_p - (2 * p - 1)) - (c.s_q - (2 * q - 1));
      s += d * d;
      s2 += d * d * d * d;
    }
    const double mean = s / draws, se = std::sqrt((s2 / draws - mean * mean) / draws);
    const double target = 4 * std::fabs(p - q) * (1 - std::fabs(p - q));
    // |p - q| = 1/2 makes every squared difference equal to 1: no spread, compare exactly.
    const double gap = std::fabs(mean - target);
    const double z = se > 0.0 ? gap / se : (gap <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity());
    worst = std::max(worst, z);
    passed += z <= 3.0;
  }
  return {passed == 10, std::to_string(passed) + "/10 pairs within 3 SE; worst |z| = " + fmt(worst)};
}

std::string run_cli(const std::string& args) {
  const auto out = std::filesystem::temp_directory_path() / "cwlab_acceptance_out.txt";
  const std::string cmd = std::string(CWLAB_CLI) + " " + args + " >" + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream f(out, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + "\n" + ss.str();
}

Outcome c13_determinism() {
  const std::vector<std::string> commands{
      "pmf --n 50 --beta 1.3",
      "sample --n 200 --beta 0.5 --kind t --samples 5000 --seed 11",
      "sample --n 200 --beta 1.5 --kind magnetisation --samples 5000 --seed 11 --format json",
      "sample --n 200 --gamma 1 --kind surrogate --samples 5000 --seed 11",
      "sample --n 200 --beta 0.9 --kind poisson --samples 5000 --seed 11",
      "chain --n 40 --beta 1.2 --steps 20000 --seed 4",
      "distance --regime critical --method exact-kol --n-grid 64:2048:2 --seed 2",
      "distance --regime supercritical --beta 2 --method smooth --n-grid 64:1024:2 --format json",
      "verify --only z-critical --only centered-binomial"};
  int same = 0;
  for (const auto& c : commands) same += run_cli(c) == run_cli(c);
  return {same == static_cast<int>(commands.size()),
          std::to_string(same) + "/" + std::to_string(commands.size()) + " commands byte-identical on repeat"};
}

struct Criterion {
  int id;
  std::string title;
  double budget_s;  // 0: no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "mixture identity", 30, c1_mixture_identity},
      {2, "subcritical Kolmogorov rate", 60, [] { return rate(Regime::Subcritical, RateMethod::ExactKol, 0.5, 1); }},
      {3, "surrogate dominance", 120, [] { return rate(Regime::Subcritical, RateMethod::SurrogateKol, 0.5, 1); }},
      {4, "critical rate", 120, [] { return rate(Regime::Critical, RateMethod::ExactKol, 1, 1); }},
      {5, "window rate", 0, c5_window},
      {6, "supercritical limit", 0, c6_supercritical},
      {7, "smooth-norm limits", 0, c7_smooth},
      {8, "subcritical normalizer bound", 10, c8_subcritical_bound},
      {9, "normalizer and density-max constants", 60, c9_constants},
      {10, "centered-binomial bound", 0, c10_binomials},
      {11, "fixed-point chain stationarity", 60, c11_chain},
      {12, "coupling identity", 0, c12_coupling},
      {13, "determinism", 0, c13_determinism},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (const auto& c : all) selected.push_back(c.id);

  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(all.size())) {
      std::cerr << "unknown criterion " << id << "\n";
      return 2;
    }
    const auto& c = all[static_cast<std::size_t>(id - 1)];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s <= 0 || secs < c.budget_s;
    const bool ok = o.passed && in_time;
    if (!ok) ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << "CRITERION " << c.id << " " << (ok ? "PASS" : "FAIL") << " [" << c.title << "] " << o.summary
              << " | runtime " << timing;
    if (c.budget_s > 0) std::cout << " (budget " << c.budget_s << "s" << (in_time ? "" : ", exceeded") << ")";
    std::cout << std::endl;
  }
  return failures ? 1 : 0;
}
