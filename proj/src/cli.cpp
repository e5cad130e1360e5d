#include "hclab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "hclab/asymptotics.hpp"
#include "hclab/errors.hpp"
#include "hclab/profile.hpp"
#include "hclab/sampling.hpp"
#include "hclab/verify.hpp"

namespace hclab {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

class UsageError : public Error {
 public:
  using Error::Error;
};

struct ExperimentConfig {
  std::string command;
  std::optional<int> d;
  std::vector<std::string> lambdas;
  std::uint64_t seed = 1;
  std::optional<std::string> out;
  std::optional<std::string> suite;
  std::optional<std::string> engine;
  std::optional<std::uint64_t> burn_in;
  std::optional<std::uint64_t> thin;
  std::uint64_t n = 1000;
  double epsilon = 0.1;
  RegimeParams params;
  double m_tolerance = 0.01;
  double container_c = 1.0;
};

// Raw flag values; `given` records which were on the command line.
struct Flags {
  int d = 0;
  std::vector<std::string> lambdas;
  std::uint64_t seed = 0;
  std::string out, suite, engine, config;
  std::uint64_t burn_in = 0, thin = 0, n = 0;
  double epsilon = 0, omega = 0, big_o = 0, c4 = 0, margin = 0, m_tol = 0, container_c = 0;
  std::map<std::string, const CLI::Option*> opts;

  bool given(const std::string& key) const {
    auto it = opts.find(key);
    return it != opts.end() && it->second->count() > 0;
  }
};

const std::vector<std::string> kConfigKeys = {"d",       "lambda",          "seed",           "out",
                                              "suite",   "engine",          "burn-in",        "thin",
                                              "n",       "epsilon",         "omega-threshold", "big-o-constant",
                                              "c-lambda4", "log-margin",    "m-tolerance",    "container-c"};

template <class T>
T parse_value(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T v{};
  in >> v;
  if (!in || !in.eof()) throw UsageError("config key '" + key + "': cannot parse '" + text + "'");
  return v;
}

std::multimap<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::multimap<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    for (auto& c : key)
      if (c == '_') c = '-';
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end())
      throw UsageError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    kv.emplace(key, value);
  }
  return kv;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(kSeedEnvVar) + " must be a nonnegative integer");
  }
  return 1;
}

// Flags win over the config file, which wins over defaults.
ExperimentConfig merge(const std::string& command, const Flags& f) {
  ExperimentConfig c;
  c.command = command;
  c.seed = default_seed();
  std::multimap<std::string, std::string> file;
  if (f.given("config")) file = read_config_file(f.config);
  auto from_file = [&](const std::string& key) -> std::optional<std::string> {
    auto range = file.equal_range(key);
    if (range.first == range.second) return std::nullopt;
    return std::prev(range.second)->second;
  };

  if (f.given("d")) c.d = f.d;
  else if (auto v = from_file("d")) c.d = parse_value<int>("d", *v);

  if (f.given("lambda")) {
    c.lambdas = f.lambdas;
  } else {
    for (auto [it, end] = file.equal_range("lambda"); it != end; ++it) {
      std::stringstream ss(it->second);
      for (std::string item; std::getline(ss, item, ',');) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) c.lambdas.push_back(item);
      }
    }
  }

  if (f.given("seed")) c.seed = f.seed;
  else if (auto v = from_file("seed")) c.seed = parse_value<std::uint64_t>("seed", *v);
  if (f.given("out")) c.out = f.out;
  else if (auto v = from_file("out")) c.out = *v;
  if (f.given("suite")) c.suite = f.suite;
  else if (auto v = from_file("suite")) c.suite = *v;
  if (f.given("engine")) c.engine = f.engine;
  else if (auto v = from_file("engine")) c.engine = *v;
  if (f.given("burn-in")) c.burn_in = f.burn_in;
  else if (auto v = from_file("burn-in")) c.burn_in = parse_value<std::uint64_t>("burn-in", *v);
  if (f.given("thin")) c.thin = f.thin;
  else if (auto v = from_file("thin")) c.thin = parse_value<std::uint64_t>("thin", *v);
  if (f.given("n")) c.n = f.n;
  else if (auto v = from_file("n")) c.n = parse_value<std::uint64_t>("n", *v);

  auto real = [&](const std::string& key, double flag_value, double& target) {
    if (f.given(key)) target = flag_value;
    else if (auto v = from_file(key)) target = parse_value<double>(key, *v);
  };
  real("epsilon", f.epsilon, c.epsilon);
  real("omega-threshold", f.omega, c.params.omega_threshold);
  real("big-o-constant", f.big_o, c.params.big_o_constant);
  real("c-lambda4", f.c4, c.params.c_lambda4);
  real("log-margin", f.margin, c.params.log_margin);
  real("m-tolerance", f.m_tol, c.m_tolerance);
  real("container-c", f.container_c, c.container_c);

  if (!(c.epsilon > 0)) throw UsageError("--epsilon must be positive");
  if (!(c.m_tolerance > 0)) throw UsageError("--m-tolerance must be positive");
  c.params.validate();
  for (const auto& l : c.lambdas) require_positive(parse_rational(l));
  return c;
}

Json config_json(const ExperimentConfig& c) {
  Json j;
  j["command"] = c.command;
  j["d"] = c.d ? Json(*c.d) : Json(nullptr);
  j["lambda"] = c.lambdas;
  j["seed"] = c.seed;
  j["out"] = c.out ? Json(*c.out) : Json(nullptr);
  if (c.command == "verify") j["suite"] = c.suite ? Json(*c.suite) : Json(nullptr);
  if (c.command == "sample") {
    j["engine"] = c.engine ? Json(*c.engine) : Json(nullptr);
    j["n"] = c.n;
    j["burn_in"] = c.burn_in ? Json(*c.burn_in) : Json(nullptr);
    j["thin"] = c.thin ? Json(*c.thin) : Json(nullptr);
  }
  j["epsilon"] = c.epsilon;
  j["regime_params"] = {{"omega_threshold", c.params.omega_threshold},
                        {"big_o_constant", c.params.big_o_constant},
                        {"c_lambda4", c.params.c_lambda4},
                        {"log_margin", c.params.log_margin}};
  j["m_tolerance"] = c.m_tolerance;
  j["container_c"] = c.container_c;
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw IoError("failed writing '" + path + "'");
}

// Writes the payload to --out (plus a metadata sidecar) or to `out`.
void emit(const ExperimentConfig& c, const std::string& payload, const std::string& precision, std::ostream& out) {
  if (!c.out) {
    out << payload;
    return;
  }
  write_file(*c.out, payload);
  Json meta;
  meta["tool"] = "hclab";
  meta["version"] = kVersion;
  meta["precision"] = precision;
  meta["config"] = config_json(c);
  write_file(*c.out + ".meta.json", meta.dump(2) + "\n");
}

int require_d(const ExperimentConfig& c) {
  if (!c.d) throw UsageError("--d is required");
  return *c.d;
}

std::string num(double x) { return format_fixed(x, 17); }

int cmd_profile(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const int d = require_d(c);
  if (d > kMaxProfileDimension) throw DimensionTooLarge("exact profiles are limited to d <= 6");
  err << "computing the bivariate profile of Q_" << d << "\n";
  const auto p = bivariate_profile(d);
  emit(c, profile_to_string(p), "exact decimal integers", out);
  return kExitOk;
}

int cmd_threshold_scan(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const int d = require_d(c);
  if (d > kMaxEnumerationDimension) throw DimensionTooLarge("threshold-scan is limited to d <= 5");
  if (c.lambdas.empty()) throw UsageError("threshold-scan needs at least one --lambda");
  const auto profile = bivariate_profile(d);
  std::ostringstream csv;
  csv << "lambda,k,mu,regime,p_min_0,p_min_1,p_min_2,p_min_3,p_min_4,p_min_5,e_min,max_side_center,"
         "max_side_halfwidth,min_side_low,min_side_high,m_used,tv_poisson\n";
  for (const auto& text : c.lambdas) {
    const Rational lambda = parse_rational(text);
    const double l = to_double(lambda);
    const auto pmf = min_side_pmf(profile, lambda);
    const double k = d * (l - 1.0);
    Rational mean = 0;
    for (std::size_t i = 0; i < pmf.size(); ++i) mean += pmf[i].value * static_cast<unsigned>(i);

    // TV against Poisson(gamma_k) on all of N; the Poisson mass beyond the exact support counts in full.
    double tv = 0.0, covered = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      const double q = poisson_min_pmf(k, static_cast<unsigned>(i));
      tv += std::abs(pmf[i].to_double() - q);
      covered += q;
    }
    tv = 0.5 * (tv + std::max(0.0, 1.0 - covered));

    const auto cls = classify_regime(l, d, c.params);
    csv << text << ',' << num(k) << ',' << num(minority_intensity(l, d).value()) << ',' << to_string(cls.primary);
    for (std::size_t i = 0; i <= 5; ++i) csv << ',' << (i < pmf.size() ? num(pmf[i].to_double()) : "0");
    csv << ',' << num(to_double(mean));
    try {
      const auto w = threshold_windows(l, d, c.epsilon, std::nullopt, c.params, c.m_tolerance);
      auto opt = [](const std::optional<LogValue>& v) { return v ? num(v->value()) : std::string("NA"); };
      csv << ',' << num(w.max_side_center.value()) << ',' << num(w.max_side_halfwidth.value()) << ','
          << opt(w.min_side_low) << ',' << opt(w.min_side_high) << ',' << (w.m_used ? std::to_string(*w.m_used) : "NA");
    } catch (const Error& e) {
      err << "lambda=" << text << ": no window (" << e.what() << ")\n";
      csv << ",NA,NA,NA,NA,NA";
    }
    csv << ',' << num(tv) << '\n';
  }
  emit(c, csv.str(), "IEEE double, 17 significant digits", out);
  return kExitOk;
}

int cmd_verify(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  if (!c.suite) throw UsageError("verify needs --suite (iso, containers, bounds or sampler)");
  if (std::find(std::begin(kSuiteNames), std::end(kSuiteNames), *c.suite) == std::end(kSuiteNames))
    throw UsageError("unknown suite '" + *c.suite + "'");
  SuiteOptions o;
  o.d = c.d.value_or(0);
  o.seed = c.seed;
  o.params = c.params;
  o.epsilon = c.epsilon;
  o.container_c = c.container_c;
  const auto report = run_suite(*c.suite, o);
  Json j;
  j["suite"] = report.suite;
  j["pass"] = report.all_pass();
  Json checks = Json::array();
  for (const auto& ch : report.checks) {
    checks.push_back({{"name", ch.name}, {"pass", ch.pass}, {"asserted", ch.asserted}, {"detail", ch.detail}});
    err << (ch.pass ? "PASS " : (ch.asserted ? "FAIL " : "NOTE ")) << ch.name << ": " << ch.detail << "\n";
  }
  j["checks"] = checks;
  emit(c, j.dump(2) + "\n", "per-check detail strings; doubles at up to 17 significant digits", out);
  return report.all_pass() ? kExitOk : kExitAssertion;
}

Json histogram_json(const std::map<std::size_t, std::uint64_t>& h) {
  Json j = Json::object();
  for (const auto& [k, v] : h) j[std::to_string(k)] = v;
  return j;
}

Json summary_json(const SampleSummary& s) {
  Json j;
  j["n"] = s.n;
  j["p_min_zero"] = boost::multiprecision::numerator(s.p_min_zero()).str() + "/" +
                    boost::multiprecision::denominator(s.p_min_zero()).str();
  j["p_min_zero_decimal"] = to_double(s.p_min_zero());
  j["min_side_histogram"] = histogram_json(s.min_side_histogram);
  j["max_side_histogram"] = histogram_json(s.max_side_histogram);
  Json comps = Json::array();
  for (const auto& [key, v] : s.component_histogram) comps.push_back({{"k", key.first}, {"cl", key.second}, {"count", v}});
  j["component_histogram"] = comps;
  return j;
}

Json estimate_json(const Estimate& e) { return {{"mean", e.mean}, {"standard_error", e.standard_error}}; }

int cmd_sample(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const int d = require_d(c);
  if (c.lambdas.size() != 1) throw UsageError("sample needs exactly one --lambda");
  const Rational lambda = parse_rational(c.lambdas.front());
  const double l = to_double(lambda);
  const std::string engine = c.engine.value_or(d <= kMaxEnumerationDimension ? "exact" : "glauber");
  if (engine != "exact" && engine != "glauber") throw UsageError("--engine must be exact or glauber");

  std::vector<VertexSet> samples;
  Json summary;
  summary["d"] = d;
  summary["lambda"] = c.lambdas.front();
  summary["seed"] = c.seed;
  summary["engine"] = engine;
  if (engine == "exact") {
    samples = exact_sample(d, l, c.seed, c.n);
    const auto s = summarize(samples, CubeGraph(d));
    summary["label"] = "exact";
    summary["summary"] = summary_json(s);
    const auto pmf = min_side_pmf(bivariate_profile(d), lambda);
    std::vector<double> exact, empirical(pmf.size(), 0.0);
    for (const auto& p : pmf) exact.push_back(p.to_double());
    for (const auto& [k, v] : s.min_side_histogram) empirical[k] = static_cast<double>(v) / static_cast<double>(s.n);
    summary["tv_min_side_vs_exact"] = tv_distance(empirical, exact);
  } else {
    GlauberOptions go;
    go.burn_in = c.burn_in;
    go.thin = c.thin;
    go.samples = c.n;
    go.keep_samples = true;
    err << "running Glauber dynamics on Q_" << d << "\n";
    auto res = glauber_run(d, l, c.seed, go);
    samples = std::move(res.samples);
    summary["label"] = d > 5 ? "empirical, single-phase" : "empirical";
    summary["burn_in"] = res.burn_in;
    summary["thin"] = res.thin;
    summary["summary"] = summary_json(res.summary);
    summary["occupancy_vertex0"] = estimate_json(res.occupancy_vertex0);
    summary["p_empty"] = estimate_json(res.empty_set);
    summary["density"] = estimate_json(res.density);
  }

  const std::string summary_text = summary.dump(2) + "\n";
  if (c.out) {
    std::ostringstream dump;
    write_sample_dump(dump, d, c.lambdas.front(), c.seed, samples);
    emit(c, dump.str(), "hex bitmasks, vertex v is bit v", out);
    write_file(*c.out + ".summary.json", summary_text);
  } else {
    out << summary_text;
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Flags& f, bool with_lambda, bool with_regime) {
  f.opts["d"] = sub->add_option("--d", f.d, "cube dimension");
  if (with_lambda)
    f.opts["lambda"] = sub->add_option("--lambda", f.lambdas, "fugacity as an exact decimal or fraction (repeatable)")
                           ->allow_extra_args(false);
  f.opts["seed"] = sub->add_option("--seed", f.seed, std::string("RNG seed (default from ") + kSeedEnvVar + ", else 1)");
  f.opts["out"] = sub->add_option("--out", f.out, "output path; a .meta.json sidecar is written next to it");
  f.opts["config"] = sub->add_option("--config", f.config, "key=value file; flags override it");
  f.opts["epsilon"] = sub->add_option("--epsilon", f.epsilon, "epsilon in the R3 window and the lower-bound window");
  if (with_regime) {
    f.opts["omega-threshold"] = sub->add_option("--omega-threshold", f.omega, "finite stand-in for omega(1) (default 10)");
    f.opts["big-o-constant"] = sub->add_option("--big-o-constant", f.big_o, "constant in |lambda-1| <= O(1)/d (default 10)");
    f.opts["c-lambda4"] = sub->add_option("--c-lambda4", f.c4, "c in lambda >= c log d / d^{1/3} (default 0.1)");
    f.opts["log-margin"] = sub->add_option("--log-margin", f.margin, "Omega(1) margin at the lower edge of R3 (default 1)");
    f.opts["m-tolerance"] = sub->add_option("--m-tolerance", f.m_tol, "tolerance replacing o(1) when solving for m (default 0.01)");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hard-core model on the hypercube: exact counts, sampling, asymptotic bounds and container checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Flags f;
  auto* profile = app.add_subcommand("profile", "write the exact bivariate profile N(a,b) of Q_d (d <= 6)");
  add_common(profile, f, false, false);

  Flags scan_flags;
  auto* scan = app.add_subcommand("threshold-scan", "exact min-side law, regimes and windows over a lambda grid (d <= 5)");
  add_common(scan, scan_flags, true, true);

  Flags verify_flags;
  auto* verify = app.add_subcommand("verify", "run a verification suite; exit 1 on any failed assertion");
  add_common(verify, verify_flags, false, true);
  verify_flags.opts["suite"] = verify->add_option("--suite", verify_flags.suite, "iso, containers, bounds or sampler");
  verify_flags.opts["container-c"] = verify->add_option("--container-c", verify_flags.container_c, "C in the first approximation (default 1)");

  Flags sample_flags;
  auto* sample = app.add_subcommand("sample", "draw samples from hc(lambda) exactly or by Glauber dynamics");
  add_common(sample, sample_flags, true, false);
  sample_flags.opts["engine"] = sample->add_option("--engine", sample_flags.engine, "exact (d <= 5) or glauber");
  sample_flags.opts["burn-in"] = sample->add_option("--burn-in", sample_flags.burn_in, "Glauber burn-in steps (default 100 d 2^d)");
  sample_flags.opts["thin"] = sample->add_option("--thin", sample_flags.thin, "Glauber steps between samples (default 2^d)");
  sample_flags.opts["n"] = sample->add_option("--n", sample_flags.n, "number of samples (default 1000)");

  std::vector<std::string> argv_storage{"hclab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (profile->parsed()) return cmd_profile(merge("profile", f), out, err);
    if (scan->parsed()) return cmd_threshold_scan(merge("threshold-scan", scan_flags), out, err);
    if (verify->parsed()) return cmd_verify(merge("verify", verify_flags), out, err);
    if (sample->parsed()) return cmd_sample(merge("sample", sample_flags), out, err);
  } catch (const DimensionTooLarge& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const BudgetExceeded& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const RetryExhausted& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hclab
