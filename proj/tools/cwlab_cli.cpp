// Batch front end over the cwlab C API.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or I/O error, 3 numerical failure.

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cwlab/cwlab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kSchemaVersion = 1;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void usage(const std::string& msg) { throw Failure{kExitUsage, msg}; }

void check(cwlab_status s) {
  if (s == CWLAB_OK) return;
  const std::string msg = std::string(cwlab_status_name(s)) + ": " + cwlab_last_error();
  if (s == CWLAB_ERR_NUMERICAL || s == CWLAB_ERR_INTERNAL) throw Failure{kExitNumerical, msg};
  throw Failure{kExitUsage, msg};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Mixture = std::unique_ptr<cwlab_mixture, Deleter<cwlab_mixture, cwlab_mixture_free>>;
using Pmf = std::unique_ptr<cwlab_pmf, Deleter<cwlab_pmf, cwlab_pmf_free>>;
using Rng = std::unique_ptr<cwlab_rng, Deleter<cwlab_rng, cwlab_rng_free>>;
using Report = std::unique_ptr<cwlab_report, Deleter<cwlab_report, cwlab_report_free>>;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string num(std::int64_t v) { return std::to_string(v); }

// ---- tabular output ------------------------------------------------------

using Cell = std::variant<std::int64_t, double, std::string, bool>;

std::string cell_text(const Cell& c) {
  if (auto* i = std::get_if<std::int64_t>(&c)) return num(*i);
  if (auto* d = std::get_if<double>(&c)) return num(*d);
  if (auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return num(*d);
    return *d;
  }
  if (auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

struct Output {
  std::string command;
  std::vector<std::pair<std::string, Cell>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;

  std::string render(const std::string& format) const {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    if (format == "json") {
      nlohmann::ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["command"] = command;
      j["params"] = nlohmann::ordered_json::object();
      for (const auto& [k, v] : params) j["params"][k] = cell_json(v);
      j["columns"] = columns;
      j["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[columns[i]] = cell_json(row[i]);
        j["rows"].push_back(std::move(r));
      }
      j["summary"] = nlohmann::ordered_json::object();
      for (const auto& [k, v] : summary) j["summary"][k] = cell_json(v);
      os << j.dump(2) << '\n';
      return os.str();
    }
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
      os << '\n';
    }
    for (const auto& [k, v] : summary) os << "# " << k << "=" << cell_text(v) << '\n';
    return os.str();
  }
};

void emit(const Output& out, const std::string& format, const std::string& path) {
  const std::string text = out.render(format);
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) usage("cannot open output file '" + path + "': " + std::strerror(errno));
  f << text;
  f.close();
  if (!f) usage("failed writing output file '" + path + "'");
}

// ---- shared options ------------------------------------------------------

struct ModelOpts {
  std::int64_t n = 100;
  double beta = 0.5;
  std::optional<double> gamma;
  double mu = 0.0;

  cwlab_params params() const {
    cwlab_params p{};
    p.n = n;
    p.beta = beta;
    p.has_gamma = gamma ? 1 : 0;
    p.gamma = gamma.value_or(0.0);
    p.mu = mu;
    check(cwlab_params_validate(&p));
    return p;
  }

  void describe(Output& out) const {
    out.params.push_back({"n", n});
    if (gamma)
      out.params.push_back({"gamma", *gamma});
    else
      out.params.push_back({"beta", beta});
    out.params.push_back({"mu", mu});
  }
};

struct IoOpts {
  std::string format = "csv";
  std::string out = "-";
  std::string write_config;
};

void add_model(CLI::App* app, ModelOpts& m) {
  app->add_option("--n", m.n, "Number of spins")->capture_default_str();
  app->add_option("--beta", m.beta, "Inverse temperature")->capture_default_str();
  app->add_option("--gamma", m.gamma, "Window scaling: beta = 1 - gamma/sqrt(n)");
  app->add_option("--mu", m.mu, "External field (fixed-point chain only)")->capture_default_str();
}

void add_io(CLI::App* app, IoOpts& io) {
  app->add_option("--format", io.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_option("--out", io.out, "Output path, '-' for stdout")->capture_default_str();
  app->add_option("--write-config", io.write_config,
                  "Write the effective configuration (TOML) to this path and exit")
      ->configurable(false);
}

std::vector<std::int64_t> parse_grid(const std::string& spec) {
  std::vector<std::int64_t> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    std::int64_t v = 0;
    auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
      usage("--n-grid expects min:max:factor with integers (got '" + spec + "')");
    parts.push_back(v);
  }
  if (parts.size() != 3) usage("--n-grid expects min:max:factor (got '" + spec + "')");
  const auto [lo, hi, factor] = std::tuple{parts[0], parts[1], parts[2]};
  if (lo < 1 || hi < lo || factor < 2) usage("--n-grid needs 1 <= min <= max and factor >= 2");
  std::vector<std::int64_t> g;
  for (std::int64_t n = lo; n <= hi; n *= factor) {
    g.push_back(n);
    if (n > hi / factor) break;
  }
  return g;
}

std::string grid_text(const std::vector<std::int64_t>& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s;
}

// ---- commands ------------------------------------------------------------

struct PmfCmd {
  ModelOpts model;
  IoOpts io;
  double rescale = 1.0;

  int run() const {
    const auto p = model.params();
    if (!(rescale > 0.0)) usage("--rescale must be positive");
    cwlab_pmf* raw = nullptr;
    check(cwlab_pmf_exact(&p, &raw));
    Pmf pmf(raw);
    Output out;
    out.command = "pmf";
    model.describe(out);
    out.params.push_back({"rescale", rescale});
    out.columns = {"s", "x", "prob", "cdf"};
    double cum = 0.0;
    const auto size = cwlab_pmf_size(pmf.get());
    for (std::int64_t j = 0; j < size; ++j) {
      std::int64_t s = 0;
      double prob = 0.0;
      check(cwlab_pmf_atom(pmf.get(), j, &s, &prob));
      cum = j + 1 == size ? 1.0 : cum + prob;
      out.rows.push_back({s, static_cast<double>(s) / rescale, prob, cum});
    }
    double m2 = 0.0;
    check(cwlab_pmf_moment(pmf.get(), 2, &m2));
    out.summary.push_back({"second_moment", m2});
    emit(out, io.format, io.out);
    return kExitOk;
  }
};

struct SampleCmd {
  ModelOpts model;
  IoOpts io;
  std::string kind = "magnetisation";
  std::int64_t samples = 1000;
  std::uint64_t seed = 1;

  int run() const {
    const auto p = model.params();
    if (samples < 0) usage("--samples must be nonnegative");
    static const std::map<std::string, cwlab_sampler> kinds = {
        {"t", CWLAB_SAMPLE_T},
        {"magnetisation", CWLAB_SAMPLE_MAGNETISATION},
        {"surrogate", CWLAB_SAMPLE_SURROGATE},
        {"poisson", CWLAB_SAMPLE_POISSON}};
    cwlab_mixture* mraw = nullptr;
    check(cwlab_mixture_build(&p, 0.0, 0, &mraw));
    Mixture mix(mraw);
    cwlab_rng* rraw = nullptr;
    check(cwlab_rng_new(seed, &rraw));
    Rng rng(rraw);
    std::vector<double> values(static_cast<std::size_t>(samples));
    check(cwlab_sample(&p, mix.get(), rng.get(), kinds.at(kind), samples, values.data()));
    Output out;
    out.command = "sample";
    model.describe(out);
    out.params.push_back({"kind", kind});
    out.params.push_back({"samples", samples});
    out.params.push_back({"seed", static_cast<std::int64_t>(seed)});
    out.columns = {"index", "value"};
    const bool integral = kind == "magnetisation" || kind == "poisson";
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double v = values[i];
      sum += v;
      sq += v * v;
      if (integral)
        out.rows.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(v)});
      else
        out.rows.push_back({static_cast<std::int64_t>(i), v});
    }
    if (samples > 0) {
      const double mean = sum / static_cast<double>(samples);
      out.summary.push_back({"mean", mean});
      out.summary.push_back({"variance", sq / static_cast<double>(samples) - mean * mean});
    }
    emit(out, io.format, io.out);
    return kExitOk;
  }
};

cwlab_rate_spec make_spec(const std::string& regime, const std::string& method, double beta,
                          double gamma) {
  cwlab_rate_spec spec{};
  check(cwlab_parse_regime(regime.c_str(), &spec.regime));
  check(cwlab_parse_method(method.c_str(), &spec.method));
  spec.beta = beta;
  spec.gamma = gamma;
  return spec;
}

void add_fit(Output& out, const std::vector<double>& ns, const std::vector<double>& ds) {
  if (ns.size() < 3) return;
  double slope = 0.0, intercept = 0.0, resid = 0.0;
  check(cwlab_fit_rate(ns.data(), ds.data(), ns.size(), &slope, &intercept, &resid));
  out.summary.push_back({"slope", slope});
  out.summary.push_back({"intercept", intercept});
  out.summary.push_back({"max_abs_residual", resid});
}

struct DistanceCmd {
  IoOpts io;
  std::string regime = "subcritical";
  std::string method = "exact-kol";
  double beta = 0.5;
  double gamma = 1.0;
  std::string n_grid = "64:8192:2";
  std::uint64_t seed = 1;

  int run() const {
    const auto spec = make_spec(regime, method, beta, gamma);
    const auto grid = parse_grid(n_grid);
    std::vector<double> d(grid.size());
    check(cwlab_distance_series(&spec, grid.data(), grid.size(), d.data()));
    Output out;
    out.command = "distance";
    out.params = {{"regime", regime}, {"method", method}, {"beta", beta},
                  {"gamma", gamma},   {"n_grid", grid_text(grid)}, {"seed", static_cast<std::int64_t>(seed)}};
    out.columns = {"n", "distance"};
    std::vector<double> ns;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out.rows.push_back({grid[i], d[i]});
      ns.push_back(static_cast<double>(grid[i]));
    }
    if (std::all_of(d.begin(), d.end(), [](double v) { return v > 0.0; })) add_fit(out, ns, d);
    double lo = 0.0, hi = 0.0;
    check(cwlab_slope_window(spec.regime, spec.method, &lo, &hi));
    out.summary.push_back({"slope_window_lo", lo});
    out.summary.push_back({"slope_window_hi", hi});
    emit(out, io.format, io.out);
    return kExitOk;
  }
};

struct RateCmd {
  IoOpts io;
  std::string in;

  int run() const {
    std::ifstream f(in);
    if (!f) usage("cannot open input file '" + in + "': " + std::strerror(errno));
    std::vector<double> ns, ds;
    std::string line;
    bool header = true;
    int ni = 0, di = 1;
    while (std::getline(f, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> cols;
      std::stringstream ss(line);
      std::string tok;
      while (std::getline(ss, tok, ',')) cols.push_back(tok);
      if (header) {
        header = false;
        for (std::size_t i = 0; i < cols.size(); ++i) {
          if (cols[i] == "n") ni = static_cast<int>(i);
          if (cols[i] == "distance") di = static_cast<int>(i);
        }
        continue;
      }
      if (static_cast<int>(cols.size()) <= std::max(ni, di))
        usage("malformed row in '" + in + "': " + line);
      double vals[2];
      const std::string* src[2] = {&cols[ni], &cols[di]};
      for (int k = 0; k < 2; ++k) {
        auto r = std::from_chars(src[k]->data(), src[k]->data() + src[k]->size(), vals[k]);
        if (r.ec != std::errc() || r.ptr != src[k]->data() + src[k]->size())
          usage("non-numeric value in '" + in + "': " + line);
      }
      ns.push_back(vals[0]);
      ds.push_back(vals[1]);
    }
    Output out;
    out.command = "rate";
    out.params = {{"in", in}};
    out.columns = {"n", "distance"};
    for (std::size_t i = 0; i < ns.size(); ++i) out.rows.push_back({ns[i], ds[i]});
    double slope = 0.0, intercept = 0.0, resid = 0.0;
    check(cwlab_fit_rate(ns.data(), ds.data(), ns.size(), &slope, &intercept, &resid));
    out.summary = {{"slope", slope}, {"intercept", intercept}, {"max_abs_residual", resid}};
    emit(out, io.format, io.out);
    return kExitOk;
  }
};

struct ChainCmd {
  ModelOpts model;
  IoOpts io;
  std::int64_t steps = 100000;
  std::int64_t burn_in = -1;
  std::uint64_t seed = 1;

  int run() const {
    const auto p = model.params();
    if (steps < 0) usage("--steps must be nonnegative");
    cwlab_rng* rraw = nullptr;
    check(cwlab_rng_new(seed, &rraw));
    Rng rng(rraw);
    std::vector<std::int64_t> traj(static_cast<std::size_t>(steps));
    check(cwlab_chain(&p, steps, burn_in, rng.get(), traj.data()));
    const std::int64_t n = p.n;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
    std::int64_t positive = 0;
    for (auto s : traj) {
      ++counts[static_cast<std::size_t>((s + n) / 2)];
      if (s > 0) ++positive;
    }
    std::vector<double> exact;
    const bool compare = n <= 1000 && model.mu == 0.0;
    if (compare) {
      cwlab_pmf* raw = nullptr;
      check(cwlab_pmf_exact(&p, &raw));
      Pmf pmf(raw);
      exact.resize(counts.size());
      for (std::size_t j = 0; j < counts.size(); ++j)
        check(cwlab_pmf_atom(pmf.get(), static_cast<std::int64_t>(j), nullptr, &exact[j]));
    }
    Output out;
    out.command = "chain";
    model.describe(out);
    out.params.push_back({"steps", steps});
    out.params.push_back({"burn_in", burn_in < 0 ? 10 * n : burn_in});
    out.params.push_back({"seed", static_cast<std::int64_t>(seed)});
    out.columns = compare ? std::vector<std::string>{"s", "count", "freq", "exact"}
                          : std::vector<std::string>{"s", "count", "freq"};
    double tv = 0.0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      const double freq = steps > 0 ? static_cast<double>(counts[j]) / static_cast<double>(steps) : 0.0;
      std::vector<Cell> row = {2 * static_cast<std::int64_t>(j) - n, counts[j], freq};
      if (compare) {
        row.push_back(exact[j]);
        tv += std::fabs(freq - exact[j]);
      }
      out.rows.push_back(std::move(row));
    }
    out.summary.push_back({"steps", steps});
    if (steps > 0) {
      out.summary.push_back({"fraction_positive", static_cast<double>(positive) / static_cast<double>(steps)});
      if (compare) out.summary.push_back({"tv_exact", 0.5 * tv});
    }
    emit(out, io.format, io.out);
    return kExitOk;
  }
};

struct VerifyCmd {
  IoOpts io;
  bool all = false;
  bool list = false;
  std::vector<std::string> only;
  std::optional<std::int64_t> n;
  std::optional<double> beta, gamma, p, q, slack;
  std::optional<std::string> n_grid;

  int run() const {
    if (list) {
      for (std::size_t i = 0; i < cwlab_check_count(); ++i) std::cout << cwlab_check_name(i) << '\n';
      return kExitOk;
    }
    std::vector<std::string> names = only;
    if (all) {
      if (!only.empty()) usage("--all and --only are exclusive");
      for (std::size_t i = 0; i < cwlab_default_suite_count(); ++i)
        names.push_back(cwlab_default_suite_name(i));
    }
    if (names.empty()) usage("verify needs --all or at least one --only NAME");
    std::vector<std::int64_t> grid;
    cwlab_check_options o{};
    if (n) o.has_n = 1, o.n = *n;
    if (beta) o.has_beta = 1, o.beta = *beta;
    if (gamma) o.has_gamma = 1, o.gamma = *gamma;
    if (p) o.has_p = 1, o.p = *p;
    if (q) o.has_q = 1, o.q = *q;
    if (slack) o.has_slack = 1, o.slack = *slack;
    if (n_grid) {
      grid = parse_grid(*n_grid);
      o.n_grid = grid.data();
      o.n_grid_len = grid.size();
    }
    Output out;
    out.command = "verify";
    out.params.push_back({"checks", [&] {
                            std::string s;
                            for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
                            return s;
                          }()});
    out.columns = {"name", "passed", "params", "observed", "target", "detail"};
    std::int64_t failed = 0;
    for (const auto& name : names) {
      cwlab_report* raw = nullptr;
      check(cwlab_check_run(name.c_str(), &o, &raw));
      Report r(raw);
      const bool ok = cwlab_report_passed(r.get()) != 0;
      if (!ok) ++failed;
      std::string params, observed, target;
      for (std::size_t i = 0; i < cwlab_report_param_count(r.get()); ++i)
        params += std::string(i ? ";" : "") + cwlab_report_param_key(r.get(), i) + "=" +
                  cwlab_report_param_value(r.get(), i);
      for (std::size_t i = 0; i < cwlab_report_observed_count(r.get()); ++i)
        observed += (i ? ";" : "") + num(cwlab_report_observed(r.get(), i));
      for (std::size_t i = 0; i < cwlab_report_target_count(r.get()); ++i)
        target += (i ? ";" : "") + num(cwlab_report_target(r.get(), i));
      out.rows.push_back({name, ok, params, observed, target, std::string(cwlab_report_detail(r.get()))});
      std::cerr << (ok ? "PASS " : "FAIL ") << name << '\n';
    }
    out.summary.push_back({"checks", static_cast<std::int64_t>(names.size())});
    out.summary.push_back({"failed", failed});
    emit(out, io.format, io.out);
    return failed ? kExitCheckFailed : kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  std::cout.imbue(std::locale::classic());
  CLI::App app{"Curie-Weiss magnetisation laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML file written by --write-config");
  app.set_version_flag("--version", std::string(cwlab_version()));

  PmfCmd pmf;
  auto* c_pmf = app.add_subcommand("pmf", "Exact law of the spin sum");
  add_model(c_pmf, pmf.model);
  add_io(c_pmf, pmf.io);
  c_pmf->add_option("--rescale", pmf.rescale, "Divide spin sums by this scale in column x")
      ->capture_default_str();

  SampleCmd sample;
  auto* c_sample = app.add_subcommand("sample", "Draw from the samplers");
  add_model(c_sample, sample.model);
  add_io(c_sample, sample.io);
  c_sample->add_option("--kind", sample.kind, "What to draw")
      ->check(CLI::IsMember({"t", "magnetisation", "surrogate", "poisson"}))
      ->capture_default_str();
  c_sample->add_option("--samples", sample.samples, "Number of draws")->capture_default_str();
  c_sample->add_option("--seed", sample.seed, "Random seed")->capture_default_str();

  DistanceCmd dist;
  auto* c_dist = app.add_subcommand("distance", "Distance to the limit law along an n-grid");
  add_io(c_dist, dist.io);
  c_dist->add_option("--regime", dist.regime, "subcritical|critical|window|supercritical")
      ->capture_default_str();
  c_dist->add_option("--method", dist.method, "exact-kol|surrogate-kol|smooth")
      ->capture_default_str();
  c_dist->add_option("--beta", dist.beta, "Inverse temperature (sub/supercritical)")
      ->capture_default_str();
  c_dist->add_option("--gamma", dist.gamma, "Window scaling")->capture_default_str();
  c_dist->add_option("--n-grid", dist.n_grid, "min:max:factor")->capture_default_str();
  c_dist->add_option("--seed", dist.seed, "Random seed (recorded; distances are deterministic)")
      ->capture_default_str();

  RateCmd rate;
  auto* c_rate = app.add_subcommand("rate", "Fit a log-log rate to an (n, distance) CSV");
  add_io(c_rate, rate.io);
  c_rate->add_option("--in", rate.in, "CSV with columns n,distance")->required();

  ChainCmd chain;
  auto* c_chain = app.add_subcommand("chain", "Run the fixed-point Markov chain");
  add_model(c_chain, chain.model);
  add_io(c_chain, chain.io);
  c_chain->add_option("--steps", chain.steps, "Recorded steps")->capture_default_str();
  c_chain->add_option("--burn-in", chain.burn_in, "Discarded steps (-1 means 10 n)")
      ->capture_default_str();
  c_chain->add_option("--seed", chain.seed, "Random seed")->capture_default_str();

  VerifyCmd verify;
  auto* c_verify = app.add_subcommand("verify", "Run numerical checks");
  add_io(c_verify, verify.io);
  c_verify->add_flag("--all", verify.all, "Run the default suite");
  c_verify->add_flag("--list", verify.list, "List check names");
  c_verify->add_option("--only", verify.only, "Run only this check (repeatable)");
  c_verify->add_option("--n", verify.n, "Override n");
  c_verify->add_option("--beta", verify.beta, "Override beta");
  c_verify->add_option("--gamma", verify.gamma, "Override gamma");
  c_verify->add_option("--p", verify.p, "Override p (centered-binomial)");
  c_verify->add_option("--q", verify.q, "Override q (centered-binomial)");
  c_verify->add_option("--slack", verify.slack, "Override slack (centered-binomial)");
  c_verify->add_option("--n-grid", verify.n_grid, "Override n-grid min:max:factor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  struct Entry {
    CLI::App* app;
    const IoOpts* io;
    std::function<int()> run;
  };
  const std::vector<Entry> entries = {
      {c_pmf, &pmf.io, [&] { return pmf.run(); }},
      {c_sample, &sample.io, [&] { return sample.run(); }},
      {c_dist, &dist.io, [&] { return dist.run(); }},
      {c_rate, &rate.io, [&] { return rate.run(); }},
      {c_chain, &chain.io, [&] { return chain.run(); }},
      {c_verify, &verify.io, [&] { return verify.run(); }},
  };
  try {
    for (const auto& e : entries) {
      if (!e.app->parsed()) continue;
      if (!e.io->write_config.empty()) {
        std::ofstream f(e.io->write_config, std::ios::binary | std::ios::trunc);
        if (!f) usage("cannot open config file '" + e.io->write_config + "': " + std::strerror(errno));
        f << '[' << e.app->get_name() << "]\n" << e.app->config_to_str(true, false);
        if (!f) usage("failed writing config file '" + e.io->write_config + "'");
        return kExitOk;
      }
      return e.run();
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    if (f.code == kExitUsage) std::cerr << "run with --help for usage\n";
    return f.code;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
