#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gompgof/distributions.hpp"
#include "gompgof/estimation.hpp"

namespace gompgof {

/// Tuning parameter a > 0 of the weight w_a(s) = exp(-a s).
class WeightParam {
 public:
  explicit WeightParam(double a);
  double a() const noexcept { return a_; }

 private:
  double a_;
};

/// Rescaled observations (kept sorted) and the shape estimate they were
/// rescaled with.
class StatisticInput {
 public:
  /// Throws DomainError for nonpositive values or eta_hat, NumericError when
  /// a value exceeds the e^{Y} overflow guard.
  StatisticInput(std::vector<double> rescaled, double eta_hat);
  explicit StatisticInput(const RescaledSample& rescaled);

  std::span<const double> sorted() const noexcept { return sorted_; }
  double eta_hat() const noexcept { return eta_hat_; }
  std::size_t size() const noexcept { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
  double eta_hat_;
};

/// Largest rescaled value accepted; e^{Y} must stay finite.
inline constexpr double kMaxRescaledValue = 700.0;

/// V_n(s) = (1/n) sum (eta e^{Y_j} - 1) min(Y_j, s) - (1/n) #{Y_j <= s}.
double v_process(const StatisticInput& input, double s);

/// T_{n,a} = n * int_0^inf V_n(s)^2 e^{-as} ds, evaluated exactly piece by piece:
/// V_n is affine between consecutive order statistics, so each piece has a
/// closed antiderivative. This is the reference definition of the statistic.
double t_statistic_quadrature(const StatisticInput& input, WeightParam w);

/// Integration-free double-sum representation over pairs of order statistics.
double t_statistic_closed_form(const StatisticInput& input, WeightParam w);

/// The statistic used by the tests (the piecewise-exact evaluation).
inline double t_statistic(const StatisticInput& input, WeightParam w) {
  return t_statistic_quadrature(input, w);
}

/// Plug-in estimate T_n / n of the population discrepancy.
double delta_estimate(const StatisticInput& input, WeightParam w, std::size_t n);

/// Stein transform T^X(s) = E[(eta b e^{bX} - b) min(X, s)] for X with the given
/// density, computed by adaptive quadrature; 0 for s <= 0. X ~ GO(eta, b) iff
/// T^X equals the CDF of X. Throws MomentConditionError when the expectation
/// diverges.
double stein_transform(const AlternativeSpec& density, const GompertzParams& p, double s);

}  // namespace gompgof
