#include "gompgof/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gompgof/bootstrap.hpp"
#include "gompgof/csv_io.hpp"
#include "gompgof/errors.hpp"
#include "gompgof/estimation.hpp"
#include "gompgof/lifetable.hpp"

namespace gompgof::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(" \t\r");
    const auto e = item.find_last_not_of(" \t\r");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw DomainError(fmt::format("'{}' expects a number, got '{}'", key, value));
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    if (!value.empty() && value.front() == '-') throw std::invalid_argument(value);
    const auto v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw DomainError(fmt::format("'{}' expects a nonnegative integer, got '{}'", key, value));
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw DomainError(fmt::format("'{}' expects true/false, got '{}'", key, value));
}

std::vector<double> read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError(fmt::format("cannot open input file '{}'", path));
  auto values = csv::read_column(in);
  if (values.empty()) throw DomainError(fmt::format("input file '{}' contains no data", path));
  return values;
}

// Writes to --output when given, otherwise to the command's stdout stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError(fmt::format("cannot open output file '{}'", path));
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string flag(bool v) { return v ? "1" : "0"; }

std::string maybe_number(double v) { return std::isfinite(v) ? csv::format_double(v) : "NA"; }

struct FitOptions {
  std::string input, output;
};

struct GofOptions {
  std::string input, output;
  std::vector<std::string> tests = {"stein", "ks", "ad", "cm", "wa"};
  std::vector<double> a_grid = kDefaultTuningGrid;
  std::size_t bootstrap = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct SimulateOptions {
  std::string config, output;
  bool full_scale = false;
  bool reference_grid = false;
  std::optional<unsigned> threads;
};

struct LifetableOptions {
  std::string input, output, pmf_output;
  std::vector<long> truncate;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  bool jitter = false;
};

struct SampleOptions {
  std::vector<std::string> family;
  std::string output;
  std::size_t n = 0;
  std::uint64_t seed = 1;
};

int cmd_fit(const FitOptions& o, std::ostream& out) {
  const Sample sample(read_sample_file(o.input));
  const FitResult fit = fit_mle(sample);
  Output dest(o.output, out);
  *dest << fmt::format("# gompgof fit n={}\n", sample.size());
  *dest << "eta_hat,b_hat,b_pilot,converged,fallback_used,iterations\n";
  *dest << fmt::format("{},{},{},{},{},{}\n", csv::format_double(fit.eta_hat), csv::format_double(fit.b_hat),
                       maybe_number(fit.b_pilot), flag(fit.converged), flag(fit.fallback_used), fit.iterations);
  return kExitOk;
}

int cmd_gof(const GofOptions& o, std::ostream& out) {
  if (o.bootstrap == 0) throw DomainError("--bootstrap must be at least 1");
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw DomainError("--alpha must lie in (0,1)");
  std::vector<TestKind> kinds;
  for (const auto& name : o.tests) {
    const auto family = TestKind::parse_family(name);
    if (family == TestKind::Family::Stein) {
      if (o.a_grid.empty()) throw DomainError("--a must list at least one tuning parameter");
      for (double a : o.a_grid) kinds.push_back(TestKind::stein(a));
    } else {
      kinds.push_back({family, 0.0});
    }
  }
  if (kinds.empty()) throw DomainError("no tests requested");

  const Sample sample(read_sample_file(o.input));
  const auto outcomes = bootstrap_tests(sample, kinds, {o.bootstrap, o.alpha, o.seed, o.threads});
  const auto& fit = outcomes.front().fit;

  Output dest(o.output, out);
  *dest << fmt::format("# gompgof gof seed={} B={} alpha={} n={}\n", o.seed, o.bootstrap,
                       csv::format_double(o.alpha), sample.size());
  *dest << fmt::format("# fit eta_hat={} b_hat={} converged={} fallback_used={} notfound_boot={:.4f}\n",
                       csv::format_double(fit.eta_hat), csv::format_double(fit.b_hat), flag(fit.converged),
                       flag(fit.fallback_used), outcomes.front().not_found_frequency_bootstrap);
  *dest << "test,a,statistic,p_value,critical_value,decision\n";
  for (const auto& r : outcomes) {
    const std::string a = r.kind.family == TestKind::Family::Stein ? csv::format_double(r.kind.a) : "NA";
    *dest << fmt::format("{},{},{},{},{},{}\n", r.kind.name(), a, csv::format_double(r.statistic),
                         csv::format_double(r.p_value), csv::format_double(r.critical_value),
                         r.reject ? "reject" : "no rejection");
  }
  return kExitOk;
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  std::ifstream in(o.config);
  if (!in) throw DomainError(fmt::format("cannot open config file '{}'", o.config));
  SimulationConfig config = parse_simulation_config(in);
  if (o.reference_grid) {
    config.scenarios = reference_scenarios();
    config.sample_sizes = {20, 50, 100};
    config.a_grid = kDefaultTuningGrid;
    config.classical = {TestKind::Family::AD, TestKind::Family::KS, TestKind::Family::CM, TestKind::Family::WA};
  }
  if (o.full_scale) {
    config.replications = 10000;
    config.bootstrap = 2000;
  }
  if (o.threads) config.threads = *o.threads;

  const auto report = run_study(config, &err);
  const std::string text = report_to_csv(report);
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream file(o.output);
    if (!file) throw DomainError(fmt::format("cannot open output file '{}'", o.output));
    file << text;
  }
  std::size_t failed = 0;
  for (auto f : report.failed_replications) failed += f;
  err << fmt::format("[simulate] {} rows, seed={} M={} B={} failed replications={} in {:.1f}s\n",
                     report.rows.size(), config.seed, config.replications, config.bootstrap, failed, report.seconds);
  return kExitOk;
}

int cmd_lifetable(const LifetableOptions& o, std::ostream& out) {
  if (o.n == 0) throw DomainError("--n must be at least 1");
  std::ifstream in(o.input);
  if (!in) throw DomainError(fmt::format("cannot open life table '{}'", o.input));
  Pmf pmf = hazard_to_pmf(read_lifetable_csv(in));
  if (!o.truncate.empty()) {
    if (o.truncate.size() != 2) throw DomainError("--truncate takes two ages L R");
    pmf = truncate_pmf(pmf, o.truncate[0], o.truncate[1]);
  }
  if (!o.pmf_output.empty()) {
    std::ofstream file(o.pmf_output);
    if (!file) throw DomainError(fmt::format("cannot open pmf output '{}'", o.pmf_output));
    write_pmf_csv(file, pmf);
  }
  const auto ages = sample_lifetimes(pmf, o.n, o.seed, o.jitter);
  Output dest(o.output, out);
  *dest << fmt::format("# gompgof lifetable seed={} n={} jitter={}\n", o.seed, o.n, flag(o.jitter));
  csv::write_column(*dest, "age", ages);
  return kExitOk;
}

int cmd_sample(SampleOptions o, std::ostream& out) {
  std::vector<std::string> family;
  for (const auto& token : o.family) {
    if (token.rfind("n=", 0) == 0) {
      o.n = to_u64("n", token.substr(2));
    } else if (token.rfind("seed=", 0) == 0) {
      o.seed = to_u64("seed", token.substr(5));
    } else {
      family.push_back(token);
    }
  }
  if (o.n == 0) throw DomainError("sample size n must be at least 1");
  const auto spec = parse_family(family);
  const Sample sample = alt_sample(spec, o.n, o.seed);
  Output dest(o.output, out);
  *dest << fmt::format("# gompgof sample family={} seed={} n={}\n", label(spec), o.seed, o.n);
  csv::write_column(*dest, "x", sample.values());
  return kExitOk;
}

}  // namespace

AlternativeSpec parse_family(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw DomainError("missing distribution family");
  std::string name = tokens.front();
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });

  std::map<std::string, double> params;
  std::vector<double> positional;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos) {
      positional.push_back(to_double(name, tokens[i]));
    } else {
      const std::string key = tokens[i].substr(0, eq);
      params[key] = to_double(key, tokens[i].substr(eq + 1));
    }
  }
  auto take = [&](const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw DomainError(fmt::format("family '{}' needs parameter {}=", name, key));
    const double v = it->second;
    params.erase(it);
    return v;
  };

  AlternativeSpec spec = GompertzParams(1.0, 1.0);
  if (name == "gompertz" || name == "go") {
    const double eta = take("eta");
    const double b = params.count("b") ? take("b") : 1.0;
    spec = GompertzParams(eta, b);
  } else if (name == "lognormal" || name == "ln") {
    spec = alt::LogNormal{take("sigma")};
  } else if (name == "gamma") {
    spec = alt::Gamma{take("k")};
  } else if (name == "invgauss" || name == "ig") {
    const double mu = take("mu");
    spec = alt::InverseGaussian{mu, take("lambda")};
  } else if (name == "weibull" || name == "w") {
    spec = alt::Weibull{take("k")};
  } else if (name == "uniform" || name == "u") {
    if (positional.size() == 2) {
      if (positional[0] != 0.0) throw DomainError("uniform family must start at 0");
      spec = alt::Uniform{positional[1]};
      positional.clear();
    } else {
      spec = alt::Uniform{take("c")};
    }
  } else if (name == "power" || name == "pow") {
    spec = alt::Power{take("nu")};
  } else if (name == "pareto" || name == "sp") {
    spec = alt::ShiftedPareto{take("nu")};
  } else if (name == "lf") {
    spec = alt::LinearFailure{take("nu")};
  } else if (name == "mix") {
    spec = alt::GompertzGammaMixture{take("p")};
  } else {
    throw DomainError(fmt::format("unknown distribution family '{}'", tokens.front()));
  }
  if (!params.empty()) {
    throw DomainError(fmt::format("unknown parameter '{}' for family '{}'", params.begin()->first, name));
  }
  if (!positional.empty()) throw DomainError(fmt::format("unexpected positional value for family '{}'", name));
  validate(spec);
  return spec;
}

AlternativeSpec parse_family(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  return parse_family(tokens);
}

SimulationConfig parse_simulation_config(std::istream& in) {
  SimulationConfig config;
  config.scenarios.clear();
  std::optional<std::vector<std::string>> tests;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (eq == std::string::npos) throw DomainError(fmt::format("config line {}: expected key = value", line_number));
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));

    if (key == "scenario") {
      config.scenarios.push_back(parse_family(value));
    } else if (key == "n") {
      config.sample_sizes.clear();
      for (const auto& v : split(value, ',')) config.sample_sizes.push_back(to_u64(key, v));
    } else if (key == "a") {
      config.a_grid.clear();
      if (value == "default") {
        config.a_grid = kDefaultTuningGrid;
      } else {
        for (const auto& v : split(value, ',')) config.a_grid.push_back(to_double(key, v));
      }
    } else if (key == "tests") {
      tests = split(value, ',');
    } else if (key == "alpha") {
      config.alpha = to_double(key, value);
    } else if (key == "replications") {
      config.replications = to_u64(key, value);
    } else if (key == "bootstrap") {
      config.bootstrap = to_u64(key, value);
    } else if (key == "seed") {
      config.seed = to_u64(key, value);
    } else if (key == "threads") {
      config.threads = static_cast<unsigned>(to_u64(key, value));
    } else if (key == "reference_grid") {
      if (to_bool(key, value)) {
        config.scenarios = reference_scenarios();
        config.sample_sizes = {20, 50, 100};
      }
    } else if (key == "full_scale") {
      if (to_bool(key, value)) {
        config.replications = 10000;
        config.bootstrap = 2000;
      }
    } else {
      throw DomainError(fmt::format("config line {}: unknown key '{}'", line_number, key));
    }
  }
  if (tests) {
    bool stein = false;
    config.classical.clear();
    for (const auto& t : *tests) {
      const auto family = TestKind::parse_family(t);
      if (family == TestKind::Family::Stein) {
        stein = true;
      } else {
        config.classical.push_back(family);
      }
    }
    if (!stein) config.a_grid.clear();
  }
  config.validate();
  return config;
}

std::vector<AlternativeSpec> reference_scenarios() {
  return {GompertzParams(0.5, 1.0), GompertzParams(1.0, 1.0), GompertzParams(2.0, 1.0), GompertzParams(4.0, 1.0),
          alt::LogNormal{0.5}, alt::LogNormal{1.0}, alt::Gamma{1.0}, alt::Gamma{2.0}, alt::Gamma{3.0},
          alt::InverseGaussian{1.0, 1.0}, alt::InverseGaussian{1.0, 3.0}, alt::Weibull{0.5}, alt::Weibull{3.0},
          alt::Uniform{5.0}, alt::Power{1.0}, alt::Power{2.0}, alt::Power{4.0}, alt::ShiftedPareto{3.0},
          alt::ShiftedPareto{5.0}, alt::ShiftedPareto{10.0}, alt::LinearFailure{3.0}, alt::LinearFailure{5.0},
          alt::LinearFailure{10.0}, alt::GompertzGammaMixture{0.1}, alt::GompertzGammaMixture{0.25},
          alt::GompertzGammaMixture{0.5}, alt::GompertzGammaMixture{0.75}};
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Goodness-of-fit tests for the Gompertz family", "gompgof"};
  app.require_subcommand(1);

  FitOptions fit_opts;
  auto* fit = app.add_subcommand("fit", "Maximum-likelihood fit of a single-column CSV sample");
  fit->add_option("--input,-i", fit_opts.input, "Input CSV (one positive value per line)")->required();
  fit->add_option("--output,-o", fit_opts.output, "Output CSV (default: stdout)");

  GofOptions gof_opts;
  auto* gof = app.add_subcommand("gof", "Parametric bootstrap goodness-of-fit tests");
  gof->add_option("--input,-i", gof_opts.input, "Input CSV")->required();
  gof->add_option("--output,-o", gof_opts.output, "Output CSV (default: stdout)");
  gof->add_option("--test", gof_opts.tests, "Tests: stein,ks,ad,cm,wa")->delimiter(',');
  gof->add_option("--a", gof_opts.a_grid, "Tuning parameters of the Stein test")->delimiter(',');
  gof->add_option("--bootstrap,-B", gof_opts.bootstrap, "Bootstrap replicates");
  gof->add_option("--alpha", gof_opts.alpha, "Significance level");
  gof->add_option("--seed", gof_opts.seed, "Random seed");
  gof->add_option("--threads", gof_opts.threads, "Worker threads (0 = all cores)");

  SimulateOptions sim_opts;
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo size/power study");
  sim->add_option("--config,-c", sim_opts.config, "key=value config file")->required();
  sim->add_option("--output,-o", sim_opts.output, "Report CSV (default: stdout)");
  sim->add_flag("--full-scale", sim_opts.full_scale, "10000 replications with 2000 bootstrap samples");
  sim->add_flag("--reference-grid", sim_opts.reference_grid, "All reference scenarios, n = 20,50,100, all tests");
  sim->add_option("--threads", sim_opts.threads, "Worker threads (0 = all cores)");

  LifetableOptions lt_opts;
  auto* lt = app.add_subcommand("lifetable", "Generate lifetimes from a discrete hazard table");
  lt->add_option("--input,-i", lt_opts.input, "CSV with columns age,hazard")->required();
  lt->add_option("--output,-o", lt_opts.output, "Generated lifetimes CSV (default: stdout)");
  lt->add_option("--pmf-output", lt_opts.pmf_output, "Write the (truncated) pmf as CSV");
  lt->add_option("--truncate", lt_opts.truncate, "Keep ages strictly between L and R")->expected(2);
  lt->add_option("--n", lt_opts.n, "Number of lifetimes")->required();
  lt->add_option("--seed", lt_opts.seed, "Random seed");
  lt->add_flag("--jitter", lt_opts.jitter, "Add U(0,1) to each integer age");

  SampleOptions sample_opts;
  auto* smp = app.add_subcommand("sample", "Draw from a distribution family, e.g. `sample gompertz eta=1 b=1`");
  smp->add_option("family", sample_opts.family, "Family name followed by key=value parameters")->required();
  smp->add_option("--n", sample_opts.n, "Sample size");
  smp->add_option("--seed", sample_opts.seed, "Random seed");
  smp->add_option("--output,-o", sample_opts.output, "Output CSV (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (*fit) return cmd_fit(fit_opts, out);
    if (*gof) return cmd_gof(gof_opts, out);
    if (*sim) return cmd_simulate(sim_opts, out, err);
    if (*lt) return cmd_lifetable(lt_opts, out);
    if (*smp) return cmd_sample(sample_opts, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace gompgof::cli
