#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "gompgof/distributions.hpp"
#include "gompgof/edf_tests.hpp"
#include "gompgof/errors.hpp"
#include "gompgof/estimation.hpp"

using namespace gompgof;

namespace {

std::vector<double> random_u(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> d(0.001, 0.999);
  std::vector<double> u(n);
  for (double& v : u) v = d(gen);
  return u;
}

double edf(const std::vector<double>& sorted, double x) {
  return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) /
         static_cast<double>(sorted.size());
}

// n * int_0^1 (F_n(u) - u)^2 weight(u) du, integrated piece by piece between order statistics.
template <class Weight>
double integrated_discrepancy(std::vector<double> u, Weight weight, bool singular_ends) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  std::vector<double> knots{0.0};
  knots.insert(knots.end(), u.begin(), u.end());
  knots.push_back(1.0);
  double total = 0.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double level = static_cast<double>(k) / n;
    auto f = [&](double t) { return (level - t) * (level - t) * weight(t); };
    if (knots[k + 1] <= knots[k]) continue;
    const bool end_piece = k == 0 || k + 2 == knots.size();
    total += singular_ends && end_piece
                 ? ts.integrate(f, knots[k], knots[k + 1])
                 : boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, knots[k], knots[k + 1], 15, 1e-15);
  }
  return n * total;
}

}  // namespace

TEST(EdfInput, ValidatesAndClips) {
  EXPECT_THROW(EdfInput({}), DomainError);
  EXPECT_THROW(EdfInput({1.2}), DomainError);
  const EdfInput in({1.0, 0.0, 0.5});
  EXPECT_EQ(in.sorted().front(), EdfInput::kClip);
  EXPECT_EQ(in.sorted().back(), 1.0 - EdfInput::kClip);
  EXPECT_EQ(in.clipped_upper(), 1u);
}

TEST(EdfInput, FromRescaledUsesUnitRateCdf) {
  const std::vector<double> y{0.3, 1.1};
  const EdfInput in = EdfInput::from_rescaled(y, 0.7);
  EXPECT_NEAR(in.sorted()[0], gompertz_cdf({0.7, 1.0}, 0.3), 1e-15);
  EXPECT_NEAR(in.sorted()[1], gompertz_cdf({0.7, 1.0}, 1.1), 1e-15);
}

TEST(Ks, SinglePoint) { EXPECT_DOUBLE_EQ(ks_statistic(EdfInput({0.5})), 0.5); }

TEST(Ks, PerfectlySpaced) {
  const std::size_t n = 8;
  std::vector<double> u(n);
  for (std::size_t j = 1; j <= n; ++j) u[j - 1] = (2.0 * j - 1) / (2.0 * n);
  EXPECT_NEAR(ks_statistic(EdfInput(u)), 1.0 / (2 * n), 1e-15);
}

TEST(Ks, MatchesGridSupremum) {
  std::mt19937_64 gen(3);
  for (std::size_t n : {1u, 7u, 40u}) {
    std::vector<double> u = random_u(gen, n);
    std::sort(u.begin(), u.end());
    double sup = 0.0;
    std::vector<double> grid;
    for (int i = 0; i <= 20000; ++i) grid.push_back(i / 20000.0);
    for (double v : u) {
      grid.push_back(v);
      grid.push_back(std::nextafter(v, 0.0));
    }
    for (double x : grid) sup = std::max(sup, std::abs(edf(u, x) - x));
    EXPECT_NEAR(ks_statistic(EdfInput(u)), sup, 1e-12);
  }
}

TEST(Cm, PerfectlySpaced) {
  const std::size_t n = 5;
  std::vector<double> u(n);
  for (std::size_t j = 1; j <= n; ++j) u[j - 1] = (2.0 * j - 1) / (2.0 * n);
  EXPECT_NEAR(cm_statistic(EdfInput(u)), 1.0 / (12 * n), 1e-15);
}

TEST(Cm, SinglePointHand) { EXPECT_NEAR(cm_statistic(EdfInput({0.9})), 1.0 / 12 + 0.16, 1e-15); }

TEST(Cm, MatchesNumericalIntegral) {
  std::mt19937_64 gen(4);
  for (std::size_t n : {1u, 6u, 30u}) {
    const auto u = random_u(gen, n);
    const double ref = integrated_discrepancy(u, [](double) { return 1.0; }, false);
    EXPECT_NEAR(cm_statistic(EdfInput(u)), ref, 1e-10);
  }
}

TEST(Ad, SinglePointHand) {
  EXPECT_NEAR(ad_statistic(EdfInput({0.5})), 2 * std::numbers::ln2 - 1, 1e-15);
}

TEST(Ad, MatchesNumericalIntegral) {
  std::mt19937_64 gen(5);
  for (std::size_t n : {1u, 6u, 30u}) {
    const auto u = random_u(gen, n);
    const double ref = integrated_discrepancy(u, [](double t) { return 1.0 / (t * (1.0 - t)); }, true);
    EXPECT_NEAR(ad_statistic(EdfInput(u)), ref, 1e-8 * std::max(1.0, ref));
  }
}

TEST(Ad, FiniteAtClippedExtremes) {
  EXPECT_TRUE(std::isfinite(ad_statistic(EdfInput({0.0, 0.5, 1.0}))));
}

TEST(Watson, EqualsCmWhenCentred) {
  const EdfInput in({0.2, 0.5, 0.8});
  EXPECT_NEAR(watson_statistic(in), cm_statistic(in), 1e-16);
}

TEST(Watson, SinglePointHand) {
  EXPECT_NEAR(watson_statistic(EdfInput({0.9})), 1.0 / 12 + 0.16 - 0.16, 1e-15);
}

TEST(EdfProperties, RangesAndOrdering) {
  std::mt19937_64 gen(6);
  for (int rep = 0; rep < 300; ++rep) {
    const EdfInput in(random_u(gen, 1 + rep % 60));
    const double ks = ks_statistic(in), cm = cm_statistic(in), wa = watson_statistic(in);
    EXPECT_GE(ks, 0.0);
    EXPECT_LE(ks, 1.0);
    EXPECT_GE(cm, 0.0);
    EXPECT_GE(ad_statistic(in), 0.0);
    EXPECT_GE(wa, 0.0);
    EXPECT_LE(wa, cm);
  }
}

TEST(EdfProperties, ScaleInvariantWithRefit) {
  const Sample s = gompertz_sample({1.2, 1.0}, 50, 9);
  const FitResult f = fit_mle(s);
  const EdfInput base = EdfInput::from_rescaled(rescale(s, f).values, f.eta_hat);
  for (double beta : {0.5, 2.0, 10.0}) {
    const Sample t = s.scaled(beta);
    const FitResult g = fit_mle(t);
    const EdfInput other = EdfInput::from_rescaled(rescale(t, g).values, g.eta_hat);
    EXPECT_NEAR(ks_statistic(other), ks_statistic(base), 1e-9);
    EXPECT_NEAR(cm_statistic(other), cm_statistic(base), 1e-9);
    EXPECT_NEAR(ad_statistic(other), ad_statistic(base), 1e-9);
    EXPECT_NEAR(watson_statistic(other), watson_statistic(base), 1e-9);
  }
}
