#include "gompgof/simulation.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "gompgof/csv_io.hpp"
#include "gompgof/errors.hpp"
#include "gompgof/estimation.hpp"
#include "gompgof/parallel.hpp"
#include "gompgof/rng.hpp"

namespace gompgof {

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

struct Replication {
  std::vector<char> rejected;
  bool fit_fallback = false;
  double boot_fallback = 0.0;
  bool failed = false;
};

}  // namespace

std::vector<TestKind> SimulationConfig::kinds() const {
  std::vector<TestKind> out;
  for (double a : a_grid) out.push_back(TestKind::stein(a));
  for (auto family : classical) {
    if (family == TestKind::Family::Stein) throw DomainError("classical test list must not contain stein");
    out.push_back({family, 0.0});
  }
  return out;
}

void SimulationConfig::validate() const {
  if (scenarios.empty()) throw DomainError("simulation needs at least one scenario");
  if (sample_sizes.empty()) throw DomainError("simulation needs at least one sample size");
  for (auto n : sample_sizes) {
    if (n < 2) throw DomainError("sample sizes must be at least 2");
  }
  for (const auto& s : scenarios) gompgof::validate(s);
  if (replications == 0) throw DomainError("replications must be at least 1");
  if (bootstrap == 0) throw DomainError("bootstrap size must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  if (kinds().empty()) throw DomainError("no tests selected");
}

SimulationReport run_study(const SimulationConfig& config, std::ostream* progress) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto kinds = config.kinds();
  SimulationReport report;

  for (const auto& scenario : config.scenarios) {
    const std::string name = label(scenario);
    for (auto n : config.sample_sizes) {
      const std::uint64_t cell_seed = mix_seed(mix_seed(config.seed, fnv1a(name)), n);
      std::vector<Replication> reps(config.replications);

      parallel_for(config.replications, config.threads, [&](std::size_t r) {
        Replication& rep = reps[r];
        rep.rejected.assign(kinds.size(), 0);
        try {
          RandomStream data_rng(cell_seed, r);
          const Sample sample(alt_draws(scenario, n, data_rng));
          BootstrapOptions options{config.bootstrap, config.alpha, mix_seed(cell_seed, ~static_cast<std::uint64_t>(r)), 1};
          const auto outcomes = bootstrap_tests(sample, kinds, options);
          for (std::size_t k = 0; k < kinds.size(); ++k) rep.rejected[k] = outcomes[k].reject ? 1 : 0;
          rep.fit_fallback = outcomes.front().fit.fallback_used;
          rep.boot_fallback = outcomes.front().not_found_frequency_bootstrap;
        } catch (const std::exception&) {
          rep.failed = true;
        }
      });

      const double m = static_cast<double>(config.replications);
      double fit_nf = 0.0, boot_nf = 0.0;
      std::size_t failed = 0;
      for (const auto& rep : reps) {
        fit_nf += rep.fit_fallback ? 1.0 : 0.0;
        boot_nf += rep.boot_fallback;
        failed += rep.failed ? 1 : 0;
      }
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        double rejections = 0.0;
        for (const auto& rep : reps) rejections += rep.rejected[k];
        report.rows.push_back({name, n, kinds[k], rejections / m, fit_nf / m, boot_nf / m});
      }
      report.failed_replications.push_back(failed);
      if (progress) {
        *progress << fmt::format("[simulate] {} n={} done: M={} B={} failed={}\n", name, n, config.replications,
                                 config.bootstrap, failed);
      }
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_to_csv(const SimulationReport& report) {
  std::ostringstream out;
  out << "scenario,n,test,a,rejection_rate,notfound_fit,notfound_boot\n";
  for (const auto& row : report.rows) {
    const std::string a = row.kind.family == TestKind::Family::Stein ? csv::format_double(row.kind.a) : "NA";
    out << fmt::format("{},{},{},{},{:.4f},{:.4f},{:.4f}\n", csv::quote(row.scenario), row.n, row.kind.name(), a,
                       row.rejection_rate, row.notfound_fit, row.notfound_boot);
  }
  return out.str();
}

std::vector<ReportRow> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<ReportRow> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto f = csv::split_line(line);
    if (f.size() != 7) throw DomainError(fmt::format("report row has {} fields: '{}'", f.size(), line));
    ReportRow row;
    row.scenario = f[0];
    row.n = std::stoul(f[1]);
    const auto family = TestKind::parse_family(f[2]);
    row.kind = family == TestKind::Family::Stein ? TestKind::stein(std::stod(f[3])) : TestKind{family, 0.0};
    row.rejection_rate = std::stod(f[4]);
    row.notfound_fit = std::stod(f[5]);
    row.notfound_boot = std::stod(f[6]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gompgof
