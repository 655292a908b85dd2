#include "gompgof/distributions.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "gompgof/errors.hpp"

namespace gompgof {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

void require_positive(double v, const char* what) {
  if (!positive_finite(v)) {
    throw DomainError(fmt::format("{} must be positive and finite, got {}", what, v));
  }
}

std::string fmt_num(double v) { return fmt::format("{}", v); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double gamma_draw(double k, RandomStream& rng) {
  if (k < 1.0) {
    // Gamma(k) = Gamma(k+1) * U^{1/k}
    return gamma_draw(k + 1.0, rng) * std::pow(rng.uniform(), 1.0 / k);
  }
  // Marsaglia & Tsang (2000)
  const double d = k - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double z = rng.normal();
    const double t = 1.0 + c * z;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = rng.uniform();
    if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) return d * v;
  }
}

// Michael, Schucany & Haas (1976).
double inverse_gaussian_draw(double mu, double lambda, RandomStream& rng) {
  const double nu = rng.normal();
  const double y = nu * nu;
  const double root = std::sqrt(4.0 * mu * lambda * y + mu * mu * y * y);
  // larger root first; the smaller one is mu^2 / larger (no cancellation)
  const double larger = mu + mu * mu * y / (2.0 * lambda) + mu * root / (2.0 * lambda);
  const double smaller = mu * mu / larger;
  return rng.uniform() <= mu / (mu + smaller) ? smaller : larger;
}

double gompertz_from_uniform(const GompertzParams& p, double u) {
  return std::log1p(-std::log1p(-u) / p.eta()) / p.b();
}

}  // namespace

GompertzParams::GompertzParams(double eta, double b) : eta_(eta), b_(b) {
  require_positive(eta, "Gompertz shape eta");
  require_positive(b, "Gompertz rate b");
}

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("sample must contain at least one observation");
  for (double v : values_) {
    if (!positive_finite(v)) {
      throw DomainError(fmt::format("sample values must be positive and finite, got {}", v));
    }
  }
}

Sample Sample::scaled(double factor) const {
  require_positive(factor, "scale factor");
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return Sample(std::move(out));
}

void validate(const AlternativeSpec& spec) {
  std::visit(overloaded{
                 [](const GompertzParams&) {},
                 [](const alt::LogNormal& s) { require_positive(s.sigma, "lognormal sigma"); },
                 [](const alt::Gamma& s) { require_positive(s.k, "gamma shape k"); },
                 [](const alt::InverseGaussian& s) {
                   require_positive(s.mu, "inverse Gaussian mu");
                   require_positive(s.lambda, "inverse Gaussian lambda");
                 },
                 [](const alt::Weibull& s) { require_positive(s.k, "Weibull shape k"); },
                 [](const alt::Uniform& s) { require_positive(s.c, "uniform upper bound c"); },
                 [](const alt::Power& s) { require_positive(s.nu, "power nu"); },
                 [](const alt::ShiftedPareto& s) { require_positive(s.nu, "shifted Pareto nu"); },
                 [](const alt::LinearFailure& s) { require_positive(s.nu, "linear failure nu"); },
                 [](const alt::GompertzGammaMixture& s) {
                   if (!(s.p >= 0.0 && s.p <= 1.0)) {
                     throw DomainError(fmt::format("mixture weight must lie in [0,1], got {}", s.p));
                   }
                 },
             },
             spec);
}

std::string label(const AlternativeSpec& spec) {
  return std::visit(
      overloaded{
          [](const GompertzParams& p) { return "GO(" + fmt_num(p.eta()) + "," + fmt_num(p.b()) + ")"; },
          [](const alt::LogNormal& s) { return "LN(" + fmt_num(s.sigma) + ")"; },
          [](const alt::Gamma& s) { return "Gamma(" + fmt_num(s.k) + ")"; },
          [](const alt::InverseGaussian& s) {
            return "IG(" + fmt_num(s.mu) + "," + fmt_num(s.lambda) + ")";
          },
          [](const alt::Weibull& s) { return "W(" + fmt_num(s.k) + ")"; },
          [](const alt::Uniform& s) { return "U(0," + fmt_num(s.c) + ")"; },
          [](const alt::Power& s) { return "Pow(" + fmt_num(s.nu) + ")"; },
          [](const alt::ShiftedPareto& s) { return "SP(" + fmt_num(s.nu) + ")"; },
          [](const alt::LinearFailure& s) { return "LF(" + fmt_num(s.nu) + ")"; },
          [](const alt::GompertzGammaMixture& s) { return "Mix(" + fmt_num(s.p) + ")"; },
      },
      spec);
}

double support_upper(const AlternativeSpec& spec) {
  if (const auto* u = std::get_if<alt::Uniform>(&spec)) return u->c;
  if (std::holds_alternative<alt::Power>(spec)) return 1.0;
  return kInf;
}

double gompertz_pdf(const GompertzParams& p, double x) {
  if (x < 0.0) return 0.0;
  const double bx = p.b() * x;
  return p.b() * p.eta() * std::exp(p.eta() + bx - p.eta() * std::exp(bx));
}

double gompertz_cdf(const GompertzParams& p, double x) {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-p.eta() * std::expm1(p.b() * x));
}

double gompertz_quantile(const GompertzParams& p, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError(fmt::format("quantile level must lie in (0,1), got {}", u));
  }
  return gompertz_from_uniform(p, u);
}

std::vector<double> gompertz_draws(const GompertzParams& p, std::size_t n, RandomStream& rng) {
  std::vector<double> out(n);
  for (double& v : out) v = gompertz_from_uniform(p, rng.uniform());
  return out;
}

Sample gompertz_sample(const GompertzParams& p, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  RandomStream rng(seed, 0);
  return Sample(gompertz_draws(p, n, rng));
}

std::vector<double> alt_draws(const AlternativeSpec& spec, std::size_t n, RandomStream& rng) {
  validate(spec);
  std::vector<double> out(n);
  for (double& v : out) {
    v = std::visit(
        overloaded{
            [&](const GompertzParams& p) { return gompertz_from_uniform(p, rng.uniform()); },
            [&](const alt::LogNormal& s) { return std::exp(s.sigma * rng.normal()); },
            [&](const alt::Gamma& s) { return gamma_draw(s.k, rng); },
            [&](const alt::InverseGaussian& s) { return inverse_gaussian_draw(s.mu, s.lambda, rng); },
            [&](const alt::Weibull& s) { return std::pow(-std::log1p(-rng.uniform()), 1.0 / s.k); },
            [&](const alt::Uniform& s) { return s.c * rng.uniform(); },
            [&](const alt::Power& s) { return std::pow(rng.uniform(), s.nu); },
            [&](const alt::ShiftedPareto& s) { return std::expm1(-std::log1p(-rng.uniform()) / s.nu); },
            [&](const alt::LinearFailure& s) {
              // solve nu (x^2/2 + x) = E for x >= 0
              const double t = 2.0 * rng.exponential() / s.nu;
              return t / (1.0 + std::sqrt(1.0 + t));
            },
            [&](const alt::GompertzGammaMixture& s) {
              if (rng.uniform() < s.p) return gompertz_from_uniform(GompertzParams(1.0, 1.0), rng.uniform());
              return gamma_draw(5.0, rng);
            },
        },
        spec);
  }
  return out;
}

Sample alt_sample(const AlternativeSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  RandomStream rng(seed, 0);
  return Sample(alt_draws(spec, n, rng));
}

double alt_pdf(const AlternativeSpec& spec, double x) {
  validate(spec);
  if (x <= 0.0) return 0.0;
  return std::visit(
      overloaded{
          [&](const GompertzParams& p) { return gompertz_pdf(p, x); },
          [&](const alt::LogNormal& s) {
            const double l = std::log(x);
            return std::exp(-l * l / (2.0 * s.sigma * s.sigma) - l - std::log(std::sqrt(2.0 * std::numbers::pi) * s.sigma));
          },
          [&](const alt::Gamma& s) {
            return std::exp((s.k - 1.0) * std::log(x) - x - std::lgamma(s.k));
          },
          [&](const alt::InverseGaussian& s) {
            // log space: x^{-3/2} overflows before the exponential underflows
            const double d = x - s.mu;
            return std::exp(0.5 * std::log(s.lambda / (2.0 * std::numbers::pi)) - 1.5 * std::log(x) -
                            s.lambda * d * d / (2.0 * s.mu * s.mu * x));
          },
          [&](const alt::Weibull& s) { return s.k * std::pow(x, s.k - 1.0) * std::exp(-std::pow(x, s.k)); },
          [&](const alt::Uniform& s) { return x < s.c ? 1.0 / s.c : 0.0; },
          [&](const alt::Power& s) { return x <= 1.0 ? std::pow(x, 1.0 / s.nu - 1.0) / s.nu : 0.0; },
          [&](const alt::ShiftedPareto& s) { return s.nu * std::pow(x + 1.0, -s.nu - 1.0); },
          [&](const alt::LinearFailure& s) {
            return s.nu * (x + 1.0) * std::exp(-s.nu * (0.5 * x * x + x));
          },
          [&](const alt::GompertzGammaMixture& s) {
            const double go = std::exp(1.0 + x - std::exp(x));
            const double ga = std::exp(4.0 * std::log(x) - x - std::lgamma(5.0));
            return s.p * go + (1.0 - s.p) * ga;
          },
      },
      spec);
}

double alt_cdf(const AlternativeSpec& spec, double x) {
  validate(spec);
  if (x <= 0.0) return 0.0;
  return std::visit(
      overloaded{
          [&](const GompertzParams& p) { return gompertz_cdf(p, x); },
          [&](const alt::LogNormal& s) { return normal_cdf(std::log(x) / s.sigma); },
          [&](const alt::Gamma& s) { return boost::math::gamma_p(s.k, x); },
          [&](const alt::InverseGaussian& s) {
            const double r = std::sqrt(s.lambda / x);
            const double first = normal_cdf(r * (x / s.mu - 1.0));
            const double tail = normal_cdf(-r * (x / s.mu + 1.0));
            return tail > 0.0 ? first + std::exp(2.0 * s.lambda / s.mu + std::log(tail)) : first;
          },
          [&](const alt::Weibull& s) { return -std::expm1(-std::pow(x, s.k)); },
          [&](const alt::Uniform& s) { return x < s.c ? x / s.c : 1.0; },
          [&](const alt::Power& s) { return x < 1.0 ? std::pow(x, 1.0 / s.nu) : 1.0; },
          [&](const alt::ShiftedPareto& s) { return -std::expm1(-s.nu * std::log1p(x)); },
          [&](const alt::LinearFailure& s) { return -std::expm1(-s.nu * (0.5 * x * x + x)); },
          [&](const alt::GompertzGammaMixture& s) {
            return s.p * gompertz_cdf(GompertzParams(1.0, 1.0), x) +
                   (1.0 - s.p) * boost::math::gamma_p(5.0, x);
          },
      },
      spec);
}

}  // namespace gompgof
