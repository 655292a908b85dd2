#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "gompgof/rng.hpp"

using gompgof::RandomStream;
using gompgof::philox4x32;

// Known-answer vectors for Philox4x32-10 (Random123 distribution).
TEST(Philox, KnownAnswerZero) {
  const auto out = philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerAllOnes) {
  const auto out = philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomStream, SameSeedAndStreamRepeat) {
  RandomStream a(42, 3), b(42, 3);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(RandomStream, StreamsAndSeedsDiffer) {
  RandomStream a(42, 3), b(42, 4), c(43, 3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    seen.insert(a());
    seen.insert(b());
    seen.insert(c());
  }
  EXPECT_EQ(seen.size(), 300u);
}

TEST(RandomStream, UniformIsOpenInterval) {
  RandomStream rng(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomStream, UniformChiSquare) {
  RandomStream rng(2024, 7);
  constexpr int kBins = 50;
  constexpr int kDraws = 200000;
  std::vector<int> counts(kBins, 0);
  for (int i = 0; i < kDraws; ++i) ++counts[static_cast<int>(rng.uniform() * kBins)];
  double chi2 = 0.0;
  const double expected = static_cast<double>(kDraws) / kBins;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 49 degrees of freedom, 99.9% quantile is about 85.4
  EXPECT_LT(chi2, 85.4);
}

TEST(RandomStream, NormalAndExponentialMoments) {
  RandomStream rng(9, 1);
  constexpr int kDraws = 400000;
  double sn = 0, snn = 0, se = 0, see = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double z = rng.normal();
    const double e = rng.exponential();
    sn += z;
    snn += z * z;
    se += e;
    see += e * e;
  }
  const double se_mean = 1.0 / std::sqrt(kDraws);
  EXPECT_NEAR(sn / kDraws, 0.0, 4 * se_mean);
  EXPECT_NEAR(snn / kDraws, 1.0, 4 * std::sqrt(2.0) * se_mean);
  EXPECT_NEAR(se / kDraws, 1.0, 4 * se_mean);
  EXPECT_NEAR(see / kDraws, 2.0, 4 * std::sqrt(20.0) * se_mean);
}

TEST(MixSeed, SpreadsNearbyInputs) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 50; ++a)
    for (std::uint64_t b = 0; b < 50; ++b) seen.insert(gompgof::mix_seed(a, b));
  EXPECT_EQ(seen.size(), 2500u);
  EXPECT_NE(gompgof::mix_seed(1, 2), gompgof::mix_seed(2, 1));
}
