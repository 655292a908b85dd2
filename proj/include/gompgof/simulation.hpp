#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gompgof/bootstrap.hpp"
#include "gompgof/distributions.hpp"

namespace gompgof {

/// Tuning grid of the Stein test used by default in power studies.
inline const std::vector<double> kDefaultTuningGrid = {0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0};

struct SimulationConfig {
  std::vector<AlternativeSpec> scenarios;
  std::vector<std::size_t> sample_sizes;
  /// Tuning parameters of the Stein test (one TestKind each).
  std::vector<double> a_grid = kDefaultTuningGrid;
  /// EDF tests to run alongside (subset of ks, ad, cm, wa).
  std::vector<TestKind::Family> classical = {TestKind::Family::AD, TestKind::Family::KS, TestKind::Family::CM,
                                             TestKind::Family::WA};
  double alpha = 0.05;
  std::size_t replications = 1000;
  std::size_t bootstrap = 500;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  /// All test kinds in report order: Stein by a, then the EDF tests.
  std::vector<TestKind> kinds() const;
  /// Throws DomainError on an invalid configuration.
  void validate() const;
};

struct ReportRow {
  std::string scenario;
  std::size_t n = 0;
  TestKind kind;
  double rejection_rate = 0.0;
  double notfound_fit = 0.0;
  double notfound_boot = 0.0;
};

struct SimulationReport {
  std::vector<ReportRow> rows;
  /// Replications that raised an error, per (scenario, n) cell in config order.
  std::vector<std::size_t> failed_replications;
  double seconds = 0.0;
};

/// Runs every (scenario, n) cell: M datasets, each tested with the shared
/// parametric bootstrap. Cell seeds depend only on (master seed, scenario
/// label, n), so results do not depend on order or thread count. Progress
/// lines go to `progress` when non-null.
SimulationReport run_study(const SimulationConfig& config, std::ostream* progress = nullptr);

/// Columns: scenario,n,test,a,rejection_rate,notfound_fit,notfound_boot.
std::string report_to_csv(const SimulationReport& report);
std::vector<ReportRow> parse_report_csv(const std::string& text);

}  // namespace gompgof
