#include "gompgof/stein_statistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "gompgof/errors.hpp"
#include "gompgof/quadrature.hpp"

namespace gompgof {

namespace {

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// int_lo^{lo+width} (alpha + beta s)^2 e^{-as} ds, width may be +inf.
double affine_square_piece(double alpha, double beta, double a, double lo, double width) {
  const double c = alpha + beta * lo;
  const double at_lo = c * c / a + 2.0 * beta * c / (a * a) + 2.0 * beta * beta / (a * a * a);
  if (!std::isfinite(width)) return std::exp(-a * lo) * at_lo;
  // F(0) - e^{-a w} F(w) = F(0) (1 - e^{-a w}) - e^{-a w} (F(w) - F(0))
  const double growth = (2.0 * c * beta * width + beta * beta * width * width) / a +
                        2.0 * beta * beta * width / (a * a);
  const double decay = std::exp(-a * width);
  return std::exp(-a * lo) * (at_lo * -std::expm1(-a * width) - decay * growth);
}

}  // namespace

WeightParam::WeightParam(double a) : a_(a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError(fmt::format("weight parameter a must be positive, got {}", a));
  }
}

StatisticInput::StatisticInput(std::vector<double> rescaled, double eta_hat)
    : sorted_(std::move(rescaled)), eta_hat_(eta_hat) {
  if (sorted_.empty()) throw DomainError("statistic input must be nonempty");
  if (!(eta_hat > 0.0) || !std::isfinite(eta_hat)) {
    throw DomainError(fmt::format("eta_hat must be positive, got {}", eta_hat));
  }
  for (double y : sorted_) {
    if (!(y > 0.0) || std::isnan(y)) throw DomainError(fmt::format("rescaled values must be positive, got {}", y));
    if (y > kMaxRescaledValue) throw NumericError(fmt::format("rescaled value {} overflows exp()", y));
  }
  std::sort(sorted_.begin(), sorted_.end());
}

StatisticInput::StatisticInput(const RescaledSample& rescaled)
    : StatisticInput(rescaled.values, rescaled.fit.eta_hat) {}

double v_process(const StatisticInput& input, double s) {
  if (!(s > 0.0)) return 0.0;
  double weighted = 0.0;
  double count = 0.0;
  for (double y : input.sorted()) {
    weighted += (input.eta_hat() * std::exp(y) - 1.0) * std::min(y, s);
    if (y <= s) count += 1.0;
  }
  return (weighted - count) / static_cast<double>(input.size());
}

double t_statistic_quadrature(const StatisticInput& input, WeightParam w) {
  const auto y = input.sorted();
  const std::size_t n = y.size();
  const double nd = static_cast<double>(n);
  const double a = w.a();

  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = input.eta_hat() * std::exp(y[j]) - 1.0;

  // tail[k] = sum_{j >= k} G_j (0-based), accumulated from the right
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t j = n; j-- > 0;) tail[j] = tail[j + 1] + g[j];

  // On (Y_(k), Y_(k+1)): V(s) = (sum_{j<=k} G_j Y_(j) - k)/n + s * sum_{j>k} G_j / n
  CompensatedSum total;
  double head = 0.0;  // sum_{j<=k} G_j Y_(j)
  double lo = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) head += g[k - 1] * y[k - 1];
    const double alpha = (head - static_cast<double>(k)) / nd;
    const double beta = tail[k] / nd;
    const double hi = k < n ? y[k] : std::numeric_limits<double>::infinity();
    total.add(affine_square_piece(alpha, beta, a, lo, hi - lo));
    lo = hi;
  }
  return nd * total.value();
}

double t_statistic_closed_form(const StatisticInput& input, WeightParam w) {
  // T = (2/n) sum_{i<j} I_ij + (1/n) sum_j D_j over order statistics, with
  //   I_ij = 2 G_i G_j / a^3 + G_j u_i + (1 - G_i Y_i) e^{-a Y_j} (G_j/a^2 + 1/a)
  //   u_i  = e^{-a Y_i} (-G_i Y_i/a^2 - 2 G_i/a^3 - Y_i/a - 1/a^2)
  //   D_j  = 2 G_j^2/a^3 + e^{-a Y_j} (-2 G_j^2 Y_j/a^2 - 2 G_j^2/a^3 - 2 G_j Y_j/a + 1/a)
  // The pair sum is separable, so prefix sums over i < j give O(n).
  // Terms of size G^2/a^3 cancel when the Y_j are small, so the 2G/a^3 (1 - e^{-aY}) pieces are
  // folded into expm1 and everything is accumulated in extended precision.
  using real = long double;
  const auto y = input.sorted();
  const std::size_t n = y.size();
  const real a = w.a();
  const real a2 = a * a;
  const real a3 = a2 * a;
  const real eta = input.eta_hat();

  real pairs = 0, diagonal = 0;
  real prefix_u = 0, prefix_w = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const real yj = y[j];
    const real gj = eta * std::exp(yj) - 1;
    const real ej = std::exp(-a * yj);
    const real one_minus_ej = -std::expm1(-a * yj);
    pairs += gj * prefix_u + ej * (gj / a2 + 1 / a) * prefix_w;
    diagonal += 2 * gj * gj * one_minus_ej / a3 + ej * (-2 * gj * gj * yj / a2 - 2 * gj * yj / a + 1 / a);

    prefix_u += 2 * gj * one_minus_ej / a3 + ej * (-gj * yj / a2 - yj / a - 1 / a2);
    prefix_w += 1 - gj * yj;
  }
  const real total = (2 * pairs + diagonal) / static_cast<real>(n);
  return std::max(0.0, static_cast<double>(total));
}

double delta_estimate(const StatisticInput& input, WeightParam w, std::size_t n) {
  if (n != input.size()) {
    throw DomainError(fmt::format("sample size {} does not match input size {}", n, input.size()));
  }
  return t_statistic(input, w) / static_cast<double>(n);
}

double stein_transform(const AlternativeSpec& density, const GompertzParams& p, double s) {
  validate(density);
  if (!(s > 0.0)) return 0.0;
  const double eta = p.eta();
  const double b = p.b();
  // (eta b e^{bx} - b) f(x)
  auto kernel = [&](double x) -> double {
    const double f = alt_pdf(density, x);
    if (f == 0.0) return 0.0;
    const double value = (eta * b * std::exp(b * x) - b) * f;
    if (!std::isfinite(value)) throw MomentConditionError("E[e^{bX}] diverges");
    return value;
  };

  const double upper = support_upper(density);
  const double inner_end = std::min(s, upper);
  constexpr double tol = 1e-11;
  const auto check = [&](const quadrature::Result& r) {
    if (!std::isfinite(r.value) || r.error > 1e-7 * std::max(1.0, r.l1)) {
      throw MomentConditionError(
          fmt::format("Stein transform integral did not converge (value {}, error {})", r.value, r.error));
    }
    return r.value;
  };

  try {
    const double inner = check(quadrature::finite([&](double x) { return x * kernel(x); }, 0.0, inner_end, tol));
    double outer = 0.0;
    if (s < upper) {
      outer = std::isfinite(upper) ? check(quadrature::finite(kernel, s, upper, tol))
                                   : check(quadrature::to_infinity(kernel, s, tol));
    }
    return inner + s * outer;
  } catch (const MomentConditionError&) {
    throw;
  } catch (const std::exception& e) {
    throw MomentConditionError(fmt::format("Stein transform integral failed: {}", e.what()));
  }
}

}  // namespace gompgof
