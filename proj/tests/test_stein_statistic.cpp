#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gompgof/distributions.hpp"
#include "gompgof/errors.hpp"
#include "gompgof/estimation.hpp"
#include "gompgof/stein_statistic.hpp"

using namespace gompgof;

namespace {

// n * int_0^inf V_n(s)^2 e^{-as} ds by adaptive Gauss-Kronrod between breakpoints.
double adaptive_statistic(const StatisticInput& in, double a) {
  auto f = [&](double s) {
    const double v = v_process(in, s);
    return v * v * std::exp(-a * s);
  };
  double total = 0.0;
  double lo = 0.0;
  for (double y : in.sorted()) {
    if (y > lo) total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, y, 15, 1e-14);
    lo = y;
  }
  boost::math::quadrature::exp_sinh<double> tail;
  total += tail.integrate(f, lo, std::numeric_limits<double>::infinity());
  return static_cast<double>(in.size()) * total;
}

StatisticInput random_input(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> eta_dist(0.1, 5.0);
  const double eta = eta_dist(gen);
  std::vector<double> y(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& v : y) v = std::log1p(-std::log1p(-u(gen)) / eta);
  return {y, eta};
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(WeightParam, RejectsNonPositive) {
  EXPECT_THROW(WeightParam(0.0), DomainError);
  EXPECT_THROW(WeightParam(-2.0), DomainError);
}

TEST(StatisticInput, Validation) {
  EXPECT_THROW(StatisticInput({}, 1.0), DomainError);
  EXPECT_THROW(StatisticInput({1.0}, 0.0), DomainError);
  EXPECT_THROW(StatisticInput({-1.0}, 1.0), DomainError);
  EXPECT_THROW(StatisticInput({701.0}, 1.0), NumericError);
  const StatisticInput in({3.0, 1.0, 2.0}, 1.0);
  EXPECT_TRUE(std::is_sorted(in.sorted().begin(), in.sorted().end()));
}

TEST(VProcess, VanishesNearZero) {
  const StatisticInput in({0.5, 1.0, 2.0}, 0.7);
  EXPECT_LT(std::abs(v_process(in, 1e-12)), 1e-10);
}

TEST(VProcess, SingleObservationHandValue) {
  const StatisticInput in({1.0}, std::exp(-1.0));
  EXPECT_NEAR(v_process(in, 2.0), -1.0, 1e-15);
}

TEST(VProcess, ConstantBeyondMaximum) {
  const StatisticInput in({0.2, 0.9, 1.4, 0.6}, 1.3);
  double expected = 0;
  for (double y : in.sorted()) expected += (1.3 * std::exp(y) - 1) * y;
  expected = expected / 4 - 1;
  EXPECT_NEAR(v_process(in, 1.5), expected, 1e-14);
  EXPECT_NEAR(v_process(in, 40.0), expected, 1e-14);
}

TEST(VProcess, AffineBetweenOrderStatisticsWithUnitJumps) {
  const StatisticInput in({0.3, 0.8, 1.1}, 0.9);
  const double n = 3;
  for (double y : in.sorted()) {
    const double eps = 1e-9;
    const double left = v_process(in, y - eps);
    const double right = v_process(in, y);
    EXPECT_NEAR(right - left, -1.0 / n, 1e-7);
  }
  // second difference vanishes inside (0.3, 0.8)
  const double m = v_process(in, 0.5), l = v_process(in, 0.4), r = v_process(in, 0.6);
  EXPECT_NEAR(l + r - 2 * m, 0.0, 1e-14);
}

TEST(TStatisticQuadrature, SingleObservationHandDerived) {
  for (double y : {0.2, 1.0, 2.5}) {
    for (double eta : {0.3, 2.0}) {
      for (double a : {0.5, 1.0, 4.0}) {
        const double g = eta * std::exp(y) - 1;
        const double first = g * g * (2 / (a * a * a) - std::exp(-a * y) * (y * y / a + 2 * y / (a * a) + 2 / (a * a * a)));
        const double second = (g * y - 1) * (g * y - 1) * std::exp(-a * y) / a;
        const StatisticInput in({y}, eta);
        EXPECT_LT(relative(t_statistic_quadrature(in, WeightParam(a)), first + second), 1e-12);
        EXPECT_LT(relative(t_statistic_closed_form(in, WeightParam(a)), first + second), 1e-10);
      }
    }
  }
}

TEST(TStatisticQuadrature, MatchesAdaptiveQuadrature) {
  std::mt19937_64 gen(314);
  for (std::size_t n : {1u, 2u, 5u, 20u, 50u}) {
    for (double a : {0.25, 1.0, 5.0}) {
      const StatisticInput in = random_input(gen, n);
      const double ref = adaptive_statistic(in, a);
      EXPECT_LT(relative(t_statistic_quadrature(in, WeightParam(a)), ref), 1e-10) << n << " " << a;
    }
  }
}

TEST(TStatisticQuadrature, NonNegative) {
  std::mt19937_64 gen(1);
  for (int rep = 0; rep < 200; ++rep) {
    const StatisticInput in = random_input(gen, 1 + rep % 30);
    EXPECT_GE(t_statistic_quadrature(in, WeightParam(0.1 + rep % 7)), 0.0);
  }
}

TEST(TStatisticClosedForm, AgreesWithPiecewiseExact) {
  for (std::size_t n : {2u, 5u, 20u, 50u}) {
    for (double a : {0.25, 1.0, 5.0}) {
      const Sample s = gompertz_sample({1, 1}, n, 100 * n + static_cast<std::uint64_t>(4 * a));
      const FitResult f = fit_mle(s);
      const StatisticInput in(rescale(s, f));
      const double q = t_statistic_quadrature(in, WeightParam(a));
      EXPECT_LT(relative(t_statistic_closed_form(in, WeightParam(a)), q), 1e-8) << n << " " << a;
    }
  }
}

TEST(TStatisticClosedForm, RandomisedAgreement) {
  std::mt19937_64 gen(2718);
  std::uniform_int_distribution<std::size_t> n_dist(1, 50);
  std::uniform_real_distribution<double> a_dist(0.1, 10.0);
  for (int rep = 0; rep < 300; ++rep) {
    const StatisticInput in = random_input(gen, n_dist(gen));
    const double a = a_dist(gen);
    const double q = t_statistic_quadrature(in, WeightParam(a));
    ASSERT_LT(relative(t_statistic_closed_form(in, WeightParam(a)), q), 1e-8) << rep;
  }
}

TEST(TStatistic, InvariantUnderRescalingWithRefit) {
  const Sample s = gompertz_sample({0.8, 1.0}, 60, 42);
  const FitResult f = fit_mle(s);
  for (double beta : {0.5, 2.0, 10.0}) {
    const Sample scaled = s.scaled(beta);
    const FitResult g = fit_mle(scaled);
    for (double a : {0.5, 2.0}) {
      const double base = t_statistic_closed_form(StatisticInput(rescale(s, f)), WeightParam(a));
      const double other = t_statistic_closed_form(StatisticInput(rescale(scaled, g)), WeightParam(a));
      EXPECT_LT(relative(other, base), 1e-8);
      const double bq = t_statistic_quadrature(StatisticInput(rescale(s, f)), WeightParam(a));
      const double oq = t_statistic_quadrature(StatisticInput(rescale(scaled, g)), WeightParam(a));
      EXPECT_LT(relative(oq, bq), 1e-8);
    }
  }
}

TEST(DeltaEstimate, EqualsStatisticOverN) {
  const Sample s = gompertz_sample({1, 1}, 30, 3);
  const StatisticInput in(rescale(s, fit_mle(s)));
  EXPECT_EQ(delta_estimate(in, WeightParam(1), 30), t_statistic(in, WeightParam(1)) / 30.0);
  EXPECT_THROW(delta_estimate(in, WeightParam(1), 31), DomainError);
}

TEST(DeltaEstimate, SmallUnderGompertzAtLargeN) {
  const Sample s = gompertz_sample({1, 1}, 10000, 8);
  const StatisticInput in(rescale(s, fit_mle(s)));
  EXPECT_LT(delta_estimate(in, WeightParam(1), 10000), 1e-2);
}

TEST(SteinTransform, ZeroOnNonPositiveArguments) {
  EXPECT_EQ(stein_transform(alt::Gamma{2}, {1, 1}, 0.0), 0.0);
  EXPECT_EQ(stein_transform(alt::Gamma{2}, {1, 1}, -3.0), 0.0);
}

TEST(SteinTransform, EqualsCdfForMatchingGompertz) {
  for (double eta : {0.5, 2.0}) {
    for (double b : {0.5, 2.0}) {
      const GompertzParams p(eta, b);
      double sup = 0.0;
      for (int i = 1; i <= 50; ++i) {
        const double s = gompertz_quantile(p, i / 51.0);
        sup = std::max(sup, std::abs(stein_transform(p, p, s) - gompertz_cdf(p, s)));
      }
      EXPECT_LT(sup, 1e-6) << eta << " " << b;
    }
  }
}

TEST(SteinTransform, DiffersFromCdfForWrongGompertz) {
  const GompertzParams truth(1.0, 1.0), wrong(2.0, 1.0);
  EXPECT_GT(std::abs(stein_transform(truth, wrong, 1.0) - gompertz_cdf(truth, 1.0)), 1e-2);
}

TEST(SteinTransform, DiffersFromCdfForGammaThree) {
  // the population of a Gamma(3) fit lies strictly inside the parameter space
  const Sample s = alt_sample(alt::Gamma{3.0}, 20000, 4);
  const FitResult f = fit_mle(s);
  ASSERT_TRUE(f.converged);
  const GompertzParams p(f.eta_hat, f.b_hat);
  double sup = 0.0;
  for (double x = 0.2; x < 10; x += 0.2) {
    sup = std::max(sup, std::abs(stein_transform(alt::Gamma{3.0}, p, x) - alt_cdf(alt::Gamma{3.0}, x)));
  }
  EXPECT_GT(sup, 1e-3);
}

TEST(SteinTransform, MomentConditionViolations) {
  EXPECT_THROW(stein_transform(alt::ShiftedPareto{3.0}, {1, 1}, 1.0), MomentConditionError);
  EXPECT_THROW(stein_transform(alt::Gamma{1.0}, {1, 1.5}, 1.0), MomentConditionError);
}
