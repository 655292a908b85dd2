#pragma once

#include <functional>

namespace gompgof::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

/// Double-exponential (tanh-sinh) rule on a finite interval; tolerates
/// integrable endpoint singularities.
Result finite(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

/// Exp-sinh rule on [lo, inf).
Result to_infinity(const std::function<double(double)>& f, double lo, double tol = 1e-12);

/// Integral over (0, upper], splitting at `split` (tanh-sinh below, exp-sinh or
/// tanh-sinh above depending on whether upper is finite).
Result positive_half_line(const std::function<double(double)>& f, double upper, double split = 1.0,
                          double tol = 1e-12);

}  // namespace gompgof::quadrature
