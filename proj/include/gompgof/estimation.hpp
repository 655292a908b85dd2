#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gompgof/distributions.hpp"

namespace gompgof {

/// Maximum-likelihood estimates of the Gompertz parameters.
struct FitResult {
  double eta_hat = 0.0;
  double b_hat = 0.0;
  /// Pilot scale used to start Newton-Raphson (NaN when the pilot failed).
  double b_pilot = 0.0;
  /// |h(b_hat)| < score_tolerance at a positive root.
  bool converged = false;
  /// No positive root was found and b_hat was set to fallback_scale.
  bool fallback_used = false;
  int iterations = 0;
};

/// Rescaled observations Y_j = b_hat * X_j together with the fit used.
struct RescaledSample {
  std::vector<double> values;
  FitResult fit;
};

namespace mle {
inline constexpr double score_tolerance = 1e-10;
inline constexpr int max_newton_iterations = 100;
/// Scale reported when the score equation has no positive root.
inline constexpr double fallback_scale = 0.001;
/// Bracket scan range for b * mean(x) when Newton from the pilot fails.
inline constexpr double scan_lower = 1e-4;
inline constexpr double scan_upper = 50.0;
inline constexpr int scan_points = 64;
/// Largest exponent b*x accepted before e^{bx} is treated as overflow.
inline constexpr double max_exponent = 700.0;
}  // namespace mle

/// Nelson-Aalen cumulative hazard: sum over order statistics X_(j) <= x of 1/(n-j+1).
double nelson_aalen(const Sample& sample, double x);
double nelson_aalen_sorted(std::span<const double> sorted, double x);

/// Type-7 (linear interpolation) empirical quantile of sorted data.
double quantile_type7(std::span<const double> sorted, double q);

/// (2/z) log((L(z) - L(z/2)) / L(z/2)) for a cumulative hazard L. Returns
/// nullopt when the log argument is not positive.
std::optional<double> pilot_from_cumulative_hazard(const std::function<double(double)>& cumulative_hazard,
                                                   double z);

/// Pilot scale from the Nelson-Aalen estimator evaluated at the empirical 90th
/// percentile and half of it. nullopt signals that the pilot failed.
std::optional<double> pilot_scale(const Sample& sample);

/// Score function of the profile likelihood in b:
///   (mean e^{bx} - 1)(b xbar + 1) - (b/n) sum x e^{bx}.
/// Throws NumericError when e^{bx} overflows.
double score_h(double b, const Sample& sample);

/// Derivative of score_h with respect to b.
double score_h_derivative(double b, const Sample& sample);

/// MLE of (eta, b). Requires n >= 2 and at least two distinct values.
FitResult fit_mle(const Sample& sample);

/// eta_hat = 1 / (mean e^{b x} - 1).
double eta_given_scale(double b, const Sample& sample);

RescaledSample rescale(const Sample& sample, const FitResult& fit);

}  // namespace gompgof
