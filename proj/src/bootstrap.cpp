#include "gompgof/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "gompgof/edf_tests.hpp"
#include "gompgof/errors.hpp"
#include "gompgof/parallel.hpp"
#include "gompgof/rng.hpp"
#include "gompgof/stein_statistic.hpp"

namespace gompgof {

namespace {

// All requested statistics of one rescaled sample; shared inputs built once.
std::vector<double> compute_statistics(std::span<const TestKind> kinds, const RescaledSample& rescaled) {
  const StatisticInput stein_input(rescaled);
  std::optional<EdfInput> edf;
  std::vector<double> out;
  out.reserve(kinds.size());
  for (const auto& kind : kinds) {
    if (kind.family == TestKind::Family::Stein) {
      out.push_back(t_statistic(stein_input, WeightParam(kind.a)));
      continue;
    }
    if (!edf) edf.emplace(EdfInput::from_rescaled(rescaled.values, rescaled.fit.eta_hat));
    switch (kind.family) {
      case TestKind::Family::KS: out.push_back(ks_statistic(*edf)); break;
      case TestKind::Family::AD: out.push_back(ad_statistic(*edf)); break;
      case TestKind::Family::CM: out.push_back(cm_statistic(*edf)); break;
      case TestKind::Family::WA: out.push_back(watson_statistic(*edf)); break;
      case TestKind::Family::Stein: break;
    }
  }
  return out;
}

void validate_kinds(std::span<const TestKind> kinds) {
  for (const auto& k : kinds) {
    if (k.family == TestKind::Family::Stein) WeightParam{k.a};
  }
}

}  // namespace

TestKind TestKind::stein(double a) {
  WeightParam{a};
  return {Family::Stein, a};
}

std::string TestKind::name() const {
  switch (family) {
    case Family::Stein: return "stein";
    case Family::KS: return "ks";
    case Family::AD: return "ad";
    case Family::CM: return "cm";
    case Family::WA: return "wa";
  }
  return "?";
}

TestKind::Family TestKind::parse_family(const std::string& name) {
  if (name == "stein") return Family::Stein;
  if (name == "ks") return Family::KS;
  if (name == "ad") return Family::AD;
  if (name == "cm") return Family::CM;
  if (name == "wa") return Family::WA;
  throw DomainError(fmt::format("unknown test '{}' (expected stein, ks, ad, cm or wa)", name));
}

double compute_statistic(const TestKind& kind, const RescaledSample& rescaled) {
  return compute_statistics(std::span(&kind, 1), rescaled).front();
}

double empirical_quantile(std::span<const double> values, double q) {
  if (values.empty()) throw DomainError("empirical quantile of an empty set");
  if (!(q > 0.0 && q <= 1.0)) throw DomainError(fmt::format("quantile level must lie in (0,1], got {}", q));
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double target = q * static_cast<double>(sorted.size());
  double rank = std::ceil(target);
  if (rank - target > 1.0 - 1e-9) rank -= 1.0;  // target within rounding of an integer
  const auto index = static_cast<std::size_t>(std::clamp(rank, 1.0, static_cast<double>(sorted.size())));
  return sorted[index - 1];
}

TestOutcome outcome_from_replicates(const TestKind& kind, double statistic, std::span<const double> replicates,
                                    double alpha) {
  if (replicates.empty()) throw DomainError("need at least one bootstrap replicate");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError(fmt::format("alpha must lie in (0,1), got {}", alpha));
  TestOutcome out;
  out.kind = kind;
  out.statistic = statistic;
  out.alpha = alpha;
  out.B = replicates.size();
  out.critical_value = empirical_quantile(replicates, 1.0 - alpha);
  const auto at_least = std::count_if(replicates.begin(), replicates.end(), [&](double t) { return t >= statistic; });
  out.p_value = static_cast<double>(at_least) / static_cast<double>(replicates.size());
  out.reject = statistic > out.critical_value;
  return out;
}

std::vector<TestOutcome> bootstrap_tests(const Sample& sample, std::span<const TestKind> kinds,
                                         const BootstrapOptions& options) {
  if (options.B == 0) throw DomainError("bootstrap size B must be at least 1");
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    throw DomainError(fmt::format("alpha must lie in (0,1), got {}", options.alpha));
  }
  if (kinds.empty()) throw DomainError("no test requested");
  validate_kinds(kinds);

  const FitResult fit = fit_mle(sample);
  const auto observed = compute_statistics(kinds, rescale(sample, fit));
  const GompertzParams null_model(fit.eta_hat, 1.0);
  const std::size_t n = sample.size();

  // replicates[j * kinds + k]
  std::vector<double> replicates(options.B * kinds.size());
  std::vector<char> fallback(options.B, 0);
  parallel_for(options.B, options.threads, [&](std::size_t j) {
    RandomStream rng(options.seed, j);
    const Sample boot(gompertz_draws(null_model, n, rng));
    const FitResult refit = fit_mle(boot);
    fallback[j] = refit.fallback_used ? 1 : 0;
    const auto values = compute_statistics(kinds, rescale(boot, refit));
    std::copy(values.begin(), values.end(), replicates.begin() + static_cast<std::ptrdiff_t>(j * kinds.size()));
  });

  const double not_found = static_cast<double>(std::count(fallback.begin(), fallback.end(), 1)) /
                           static_cast<double>(options.B);
  std::vector<TestOutcome> outcomes;
  outcomes.reserve(kinds.size());
  std::vector<double> column(options.B);
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    for (std::size_t j = 0; j < options.B; ++j) column[j] = replicates[j * kinds.size() + k];
    TestOutcome out = outcome_from_replicates(kinds[k], observed[k], column, options.alpha);
    out.not_found_frequency_bootstrap = not_found;
    out.fit = fit;
    outcomes.push_back(out);
  }
  return outcomes;
}

TestOutcome bootstrap_test(const Sample& sample, const TestKind& kind, std::size_t B, double alpha,
                           std::uint64_t seed, unsigned threads) {
  return bootstrap_tests(sample, std::span(&kind, 1), {B, alpha, seed, threads}).front();
}

}  // namespace gompgof
