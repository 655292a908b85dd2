#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gompgof/rng.hpp"

namespace gompgof {

/// Parameters of the Gompertz law GO(eta, b) with density
/// b*eta*exp(eta + b*x - eta*e^{b*x}) on x >= 0. Both strictly positive.
class GompertzParams {
 public:
  GompertzParams(double eta, double b);

  double eta() const noexcept { return eta_; }
  double b() const noexcept { return b_; }

  friend bool operator==(const GompertzParams&, const GompertzParams&) = default;

 private:
  double eta_;
  double b_;
};

/// A sample of strictly positive, finite observations (n >= 1).
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Copy of the values multiplied by a positive factor.
  Sample scaled(double factor) const;

 private:
  std::vector<double> values_;
};

namespace alt {
struct LogNormal { double sigma; };                 // LN(sigma), log-mean 0
struct Gamma { double k; };                         // unit rate
struct InverseGaussian { double mu; double lambda; };
struct Weibull { double k; };                       // unit scale
struct Uniform { double c; };                       // U(0, c)
struct Power { double nu; };                        // density x^{1/nu - 1}/nu on (0, 1)
struct ShiftedPareto { double nu; };                // density nu (x+1)^{-nu-1}
struct LinearFailure { double nu; };                // hazard nu (x+1)
struct GompertzGammaMixture { double p; };          // p GO(1,1) + (1-p) Gamma(5)
}  // namespace alt

/// One of the families used as null model or alternative in power studies.
using AlternativeSpec =
    std::variant<GompertzParams, alt::LogNormal, alt::Gamma, alt::InverseGaussian, alt::Weibull,
                 alt::Uniform, alt::Power, alt::ShiftedPareto, alt::LinearFailure,
                 alt::GompertzGammaMixture>;

/// Throws DomainError unless every parameter is in range.
void validate(const AlternativeSpec& spec);

/// Short display label, e.g. "GO(1,1)", "LN(0.5)", "Mix(0.25)".
std::string label(const AlternativeSpec& spec);

/// Right end of the support (+inf for unbounded families).
double support_upper(const AlternativeSpec& spec);

double gompertz_pdf(const GompertzParams& p, double x);
double gompertz_cdf(const GompertzParams& p, double x);
/// Inverse CDF; throws DomainError unless 0 < u < 1.
double gompertz_quantile(const GompertzParams& p, double u);

/// n draws by inverse transform from stream (seed, 0).
Sample gompertz_sample(const GompertzParams& p, std::size_t n, std::uint64_t seed);
std::vector<double> gompertz_draws(const GompertzParams& p, std::size_t n, RandomStream& rng);

Sample alt_sample(const AlternativeSpec& spec, std::size_t n, std::uint64_t seed);
std::vector<double> alt_draws(const AlternativeSpec& spec, std::size_t n, RandomStream& rng);

/// Density on x > 0 (0 elsewhere). The linear-failure-rate law uses the
/// hazard-consistent density nu(x+1) exp(-nu(x^2/2 + x)).
double alt_pdf(const AlternativeSpec& spec, double x);
double alt_cdf(const AlternativeSpec& spec, double x);

}  // namespace gompgof
