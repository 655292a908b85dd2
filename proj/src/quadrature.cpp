#include "gompgof/quadrature.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace gompgof::quadrature {

Result finite(const std::function<double(double)>& f, double lo, double hi, double tol) {
  Result r;
  if (!(hi > lo)) return r;
  boost::math::quadrature::tanh_sinh<double> rule;
  r.value = rule.integrate(f, lo, hi, tol, &r.error, &r.l1);
  return r;
}

Result to_infinity(const std::function<double(double)>& f, double lo, double tol) {
  Result r;
  boost::math::quadrature::exp_sinh<double> rule;
  r.value = rule.integrate(f, lo, std::numeric_limits<double>::infinity(), tol, &r.error, &r.l1);
  return r;
}

Result positive_half_line(const std::function<double(double)>& f, double upper, double split, double tol) {
  if (std::isfinite(upper) && upper <= split) return finite(f, 0.0, upper, tol);
  Result left = finite(f, 0.0, split, tol);
  Result right = std::isfinite(upper) ? finite(f, split, upper, tol) : to_infinity(f, split, tol);
  return {left.value + right.value, left.error + right.error, left.l1 + right.l1};
}

}  // namespace gompgof::quadrature
