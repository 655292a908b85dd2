#include "gompgof/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "gompgof/errors.hpp"

namespace gompgof {

namespace {

struct Score {
  double h;
  double dh;
};

// Single pass over the data. Written so that the O(b) parts cancel analytically:
//   h = mean(expm1(bx) - bx) + b (xbar * mean expm1(bx) - mean x expm1(bx))
std::optional<Score> evaluate_score(double b, std::span<const double> x, double xbar, double xmax) {
  if (!(b > 0.0) || b * xmax > mle::max_exponent) return std::nullopt;
  double e1 = 0.0, curv = 0.0, xe1 = 0.0, xe = 0.0, x2e = 0.0;
  for (double v : x) {
    const double t = b * v;
    const double em1 = std::expm1(t);
    const double e = em1 + 1.0;
    e1 += em1;
    curv += em1 - t;
    xe1 += v * em1;
    xe += v * e;
    x2e += v * v * e;
  }
  const double n = static_cast<double>(x.size());
  e1 /= n;
  curv /= n;
  xe1 /= n;
  xe /= n;
  x2e /= n;
  Score s{curv + b * (xbar * e1 - xe1), xbar * e1 + b * (xbar * xe - x2e)};
  if (!std::isfinite(s.h) || !std::isfinite(s.dh)) return std::nullopt;
  return s;
}

struct Prepared {
  std::span<const double> x;
  double xbar;
  double xmax;
};

Prepared prepare(const Sample& sample) {
  const auto x = sample.values();
  return {x, std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size()),
          *std::max_element(x.begin(), x.end())};
}

bool acceptable_root(double b, double h, const Prepared& d) {
  return std::abs(h) < mle::score_tolerance && b * d.xbar >= mle::scan_lower;
}

// Damped Newton from a positive start. Returns the root on success.
std::optional<double> newton(double b, const Prepared& d, int& iterations) {
  for (int it = 0; it < mle::max_newton_iterations; ++it) {
    auto s = evaluate_score(b, d.x, d.xbar, d.xmax);
    if (!s) return std::nullopt;
    if (acceptable_root(b, s->h, d)) {
      // one polishing step keeps refits of rescaled data consistent to rounding
      const double polished = b - s->h / s->dh;
      if (auto p = evaluate_score(polished, d.x, d.xbar, d.xmax);
          p && std::abs(p->h) <= std::abs(s->h)) {
        return polished;
      }
      return b;
    }
    if (s->dh == 0.0) return std::nullopt;
    double step = -s->h / s->dh;
    double next = b + step;
    int halvings = 0;
    while ((!(next > 0.0) || next * d.xmax > mle::max_exponent) && halvings < 60) {
      step *= 0.5;
      next = b + step;
      ++halvings;
    }
    if (!(next > 0.0) || next * d.xmax > mle::max_exponent) return std::nullopt;
    ++iterations;
    b = next;
  }
  return std::nullopt;
}

// Log-spaced scan of b * xbar over [scan_lower, scan_upper] for a downward sign
// change, then safeguarded Newton inside the bracket.
std::optional<double> bracket_scan(const Prepared& d, int& iterations) {
  const double ratio = std::log(mle::scan_upper / mle::scan_lower);
  double lo = 0.0, hi = 0.0;
  double h_lo = 0.0;
  bool found = false;
  std::optional<double> prev_b;
  double prev_h = 0.0;
  for (int i = 0; i < mle::scan_points; ++i) {
    const double u = mle::scan_lower * std::exp(ratio * i / (mle::scan_points - 1));
    const double b = u / d.xbar;
    auto s = evaluate_score(b, d.x, d.xbar, d.xmax);
    if (!s) break;
    if (s->h == 0.0) return b;
    if (prev_b && prev_h > 0.0 && s->h < 0.0) {
      lo = *prev_b;
      hi = b;
      h_lo = prev_h;
      found = true;
      break;
    }
    prev_b = b;
    prev_h = s->h;
  }
  if (!found) return std::nullopt;

  double b = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    auto s = evaluate_score(b, d.x, d.xbar, d.xmax);
    if (!s) return std::nullopt;
    ++iterations;
    if (std::abs(s->h) < mle::score_tolerance) return b;
    if ((s->h > 0.0) == (h_lo > 0.0)) {
      lo = b;
      h_lo = s->h;
    } else {
      hi = b;
    }
    const double newton_step = s->dh != 0.0 ? b - s->h / s->dh : lo - 1.0;
    b = (newton_step > lo && newton_step < hi) ? newton_step : 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return b;
  }
  return std::nullopt;
}

}  // namespace

double nelson_aalen_sorted(std::span<const double> sorted, double x) {
  const std::size_t n = sorted.size();
  const std::size_t count = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
  double sum = 0.0;
  for (std::size_t j = 1; j <= count; ++j) sum += 1.0 / static_cast<double>(n - j + 1);
  return sum;
}

double nelson_aalen(const Sample& sample, double x) {
  std::vector<double> sorted(sample.values().begin(), sample.values().end());
  std::sort(sorted.begin(), sorted.end());
  return nelson_aalen_sorted(sorted, x);
}

double quantile_type7(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw DomainError("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

std::optional<double> pilot_from_cumulative_hazard(const std::function<double(double)>& cumulative_hazard,
                                                   double z) {
  const double full = cumulative_hazard(z);
  const double half = cumulative_hazard(0.5 * z);
  if (!(half > 0.0)) return std::nullopt;
  const double arg = (full - half) / half;
  if (!(arg > 0.0) || !std::isfinite(arg)) return std::nullopt;
  return 2.0 / z * std::log(arg);
}

std::optional<double> pilot_scale(const Sample& sample) {
  std::vector<double> sorted(sample.values().begin(), sample.values().end());
  std::sort(sorted.begin(), sorted.end());
  const double z = quantile_type7(sorted, 0.9);
  if (!(z > 0.0)) return std::nullopt;
  return pilot_from_cumulative_hazard([&](double x) { return nelson_aalen_sorted(sorted, x); }, z);
}

double score_h(double b, const Sample& sample) {
  if (!(b > 0.0)) throw DomainError(fmt::format("score requires b > 0, got {}", b));
  const auto d = prepare(sample);
  auto s = evaluate_score(b, d.x, d.xbar, d.xmax);
  if (!s) throw NumericError(fmt::format("score overflow: exp(b*x) too large at b = {}", b));
  return s->h;
}

double score_h_derivative(double b, const Sample& sample) {
  if (!(b > 0.0)) throw DomainError(fmt::format("score requires b > 0, got {}", b));
  const auto d = prepare(sample);
  auto s = evaluate_score(b, d.x, d.xbar, d.xmax);
  if (!s) throw NumericError(fmt::format("score overflow: exp(b*x) too large at b = {}", b));
  return s->dh;
}

double eta_given_scale(double b, const Sample& sample) {
  double sum = 0.0;
  for (double v : sample.values()) sum += std::expm1(b * v);
  const double mean = sum / static_cast<double>(sample.size());
  if (!std::isfinite(mean) || !(mean > 0.0)) {
    throw NumericError(fmt::format("cannot compute eta: mean(exp(bx)) - 1 = {}", mean));
  }
  return 1.0 / mean;
}

FitResult fit_mle(const Sample& sample) {
  if (sample.size() < 2) throw DomainError("fitting requires at least two observations");
  const auto d = prepare(sample);
  if (std::all_of(d.x.begin(), d.x.end(), [&](double v) { return v == d.x.front(); })) {
    throw DomainError("degenerate sample: all observations are equal");
  }

  FitResult fit;
  const auto pilot = pilot_scale(sample);
  fit.b_pilot = pilot ? *pilot : std::numeric_limits<double>::quiet_NaN();

  std::optional<double> root;
  if (pilot && *pilot > 0.0) root = newton(*pilot, d, fit.iterations);
  if (!root) root = bracket_scan(d, fit.iterations);

  if (root) {
    fit.b_hat = *root;
    fit.converged = true;
  } else {
    fit.b_hat = mle::fallback_scale;
    fit.fallback_used = true;
  }
  fit.eta_hat = eta_given_scale(fit.b_hat, sample);
  return fit;
}

RescaledSample rescale(const Sample& sample, const FitResult& fit) {
  RescaledSample out{{sample.values().begin(), sample.values().end()}, fit};
  for (double& v : out.values) v *= fit.b_hat;
  return out;
}

}  // namespace gompgof
