#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gompgof/distributions.hpp"
#include "gompgof/estimation.hpp"

namespace gompgof {

/// Which statistic a test uses: the Stein-type T_{n,a} or one of the EDF tests.
struct TestKind {
  enum class Family { Stein, KS, AD, CM, WA };

  Family family = Family::Stein;
  double a = 1.0;  // only meaningful for Stein

  static TestKind stein(double a);
  static TestKind ks() { return {Family::KS, 0.0}; }
  static TestKind ad() { return {Family::AD, 0.0}; }
  static TestKind cm() { return {Family::CM, 0.0}; }
  static TestKind wa() { return {Family::WA, 0.0}; }

  /// "stein", "ks", "ad", "cm" or "wa".
  std::string name() const;
  /// Parses one of the names above; Stein needs `a` supplied separately.
  static Family parse_family(const std::string& name);

  friend bool operator==(const TestKind&, const TestKind&) = default;
};

/// Evaluates a statistic on rescaled data.
double compute_statistic(const TestKind& kind, const RescaledSample& rescaled);

struct TestOutcome {
  TestKind kind;
  double statistic = 0.0;
  double p_value = 0.0;
  double critical_value = 0.0;
  double alpha = 0.0;
  std::size_t B = 0;
  bool reject = false;
  /// Share of bootstrap refits that fell back to the default scale.
  double not_found_frequency_bootstrap = 0.0;
  FitResult fit;
};

struct BootstrapOptions {
  std::size_t B = 500;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  /// Worker threads (0 = hardware concurrency). Results do not depend on it.
  unsigned threads = 1;
};

/// inf{s : H(s) >= q} for the empirical CDF H of `values`, i.e. the
/// ceil(q*B)-th order statistic (q*B is rounded down when within 1e-9 of an
/// integer, so 0.95 * 500 selects the 475th value).
double empirical_quantile(std::span<const double> values, double q);

/// Decision and p-value for an observed statistic against bootstrap replicates.
TestOutcome outcome_from_replicates(const TestKind& kind, double statistic, std::span<const double> replicates,
                                    double alpha);

/// Parametric bootstrap for several statistics sharing the same bootstrap
/// samples: fit (eta, b); draw B samples from GO(eta_hat, 1) with replicate j
/// using stream (seed, j); refit each; compare. One outcome per kind, in order.
std::vector<TestOutcome> bootstrap_tests(const Sample& sample, std::span<const TestKind> kinds,
                                         const BootstrapOptions& options);

TestOutcome bootstrap_test(const Sample& sample, const TestKind& kind, std::size_t B, double alpha,
                           std::uint64_t seed, unsigned threads = 1);

}  // namespace gompgof
