// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "bgaug/error.hpp"
#include "bgaug/rng.hpp"

namespace bgaug {
namespace {

// Reference SplitMix64 written out independently of the library.
std::uint64_t ref_mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

TEST(SplitMix64, PublishedSequenceForSeed1234567) {
  RngStream s(1234567);
  EXPECT_EQ(s.next_u64(), 6457827717110365317ULL);
  EXPECT_EQ(s.next_u64(), 3203168211198807973ULL);
  EXPECT_EQ(s.next_u64(), 9817491932198370423ULL);
  EXPECT_EQ(s.next_u64(), 4593380528125082431ULL);
  EXPECT_EQ(s.next_u64(), 16408922859458223821ULL);
  EXPECT_EQ(s.counter(), 5u);
}

TEST(Substream, MatchesIndependentDerivation) {
  const std::uint64_t g = 0x9e3779b97f4a7c15ULL;
  const std::uint64_t seed = 0xfeedULL, epoch = 3, index = 17;
  const std::uint64_t purpose = 4;
  const std::uint64_t expect =
      ref_mix(seed ^ ref_mix(epoch + g) ^ ref_mix(index + 2 * g) ^ ref_mix(purpose + 3 * g));
  EXPECT_EQ(derive_substream(seed, epoch, index, Purpose::Noise).state(), expect);
}

TEST(Substream, SameInputsGiveSameFirstHundredDraws) {
  RngStream a = derive_substream(42, 1, 2, Purpose::Photometric);
  RngStream b = derive_substream(42, 1, 2, Purpose::Photometric);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Substream, PurposesAndCoordinatesDiffer) {
  RngStream bg = derive_substream(42, 1, 2, Purpose::Background);
  RngStream noise = derive_substream(42, 1, 2, Purpose::Noise);
  EXPECT_NE(bg.next_u64(), noise.next_u64());
  // Swapping epoch and index must not collide.
  EXPECT_NE(derive_substream(7, 1, 2, Purpose::Pitch).state(),
            derive_substream(7, 2, 1, Purpose::Pitch).state());
  // No two purposes share a start state for a grid of coordinates.
  std::vector<std::uint64_t> states;
  for (std::uint64_t e = 0; e < 8; ++e) {
    for (std::uint64_t i = 0; i < 64; ++i) {
      for (auto p : {Purpose::Background, Purpose::Pitch, Purpose::Photometric, Purpose::Noise,
                     Purpose::Split}) {
        states.push_back(derive_substream(99, e, i, p).state());
      }
    }
  }
  std::sort(states.begin(), states.end());
  EXPECT_EQ(std::adjacent_find(states.begin(), states.end()), states.end());
}

TEST(Uniform, MeanOfTenThousandDraws) {
  RngStream s = derive_substream(2024, 0, 0, Purpose::Photometric);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = draw_uniform(s, 0.0, 1.0);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_GE(sum / 10000, 0.48);
  EXPECT_LE(sum / 10000, 0.52);
}

TEST(Uniform, UsesTopFiftyThreeBits) {
  RngStream a(77), b(77);
  const double u = draw_uniform(a, 0.0, 1.0);
  EXPECT_EQ(u, static_cast<double>(b.next_u64() >> 11) / 9007199254740992.0);
}

TEST(Uniform, DegenerateRangeAndCounts) {
  RngStream s(1);
  EXPECT_EQ(draw_uniform(s, 5.0, 5.0), 5.0);
  EXPECT_EQ(s.counter(), 1u);
  EXPECT_THROW(draw_uniform(s, 2.0, 1.0), Error);
  EXPECT_EQ(draw_uniform_int(s, 3, 3), 3);
  EXPECT_THROW(draw_uniform_int(s, 4, 3), Error);
}

TEST(UniformInt, FrequenciesOverFourValues) {
  RngStream s = derive_substream(31337, 0, 0, Purpose::Split);
  std::array<int, 4> counts{};
  for (int i = 0; i < 10000; ++i) {
    const auto v = draw_uniform_int(s, 0, 3);
    ASSERT_GE(v, 0);
    ASSERT_LE(v, 3);
    ++counts[static_cast<std::size_t>(v)];
  }
  double chi2 = 0.0;
  for (int c : counts) {
    EXPECT_NEAR(c / 10000.0, 0.25, 0.02);
    chi2 += (c - 2500.0) * (c - 2500.0) / 2500.0;
  }
  EXPECT_LT(chi2, 16.27);  // p = 0.001, 3 degrees of freedom
}

TEST(UniformInt, FullAndWideRanges) {
  RngStream s(8);
  for (int i = 0; i < 1000; ++i) {
    const auto v = draw_uniform_int(s, -5, 1000000007);
    ASSERT_GE(v, -5);
    ASSERT_LE(v, 1000000007);
  }
  const auto lo = std::numeric_limits<std::int64_t>::min();
  const auto hi = std::numeric_limits<std::int64_t>::max();
  (void)draw_uniform_int(s, lo, hi);
}

TEST(Normal, ZeroSigmaAndTwoDraws) {
  RngStream s(3);
  EXPECT_EQ(draw_normal(s, 0.0, 0.0), 0.0);
  EXPECT_EQ(s.counter(), 2u);
  EXPECT_EQ(draw_normal(s, 4.5, 0.0), 4.5);
  EXPECT_EQ(s.counter(), 4u);
  EXPECT_THROW(draw_normal(s, 0.0, -1.0), Error);
}

TEST(Normal, MomentsAndTails) {
  RngStream s = derive_substream(555, 0, 0, Purpose::Noise);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  int within1 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = draw_normal(s, 0.0, 1.0);
    ASSERT_TRUE(std::isfinite(z));
    sum += z;
    sum2 += z * z;
    within1 += std::abs(z) < 1.0;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  EXPECT_NEAR(mean, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(var, 1.0, 0.02);
  EXPECT_NEAR(within1 / static_cast<double>(n), std::erf(1.0 / std::sqrt(2.0)), 0.006);
}

TEST(Seeds, DecimalAndHex) {
  EXPECT_EQ(parse_seed("0"), 0u);
  EXPECT_EQ(parse_seed("12345"), 12345u);
  EXPECT_EQ(parse_seed("0x5eed"), 0x5eedu);
  EXPECT_EQ(parse_seed("0XFFFFFFFFFFFFFFFF"), ~0ULL);
  EXPECT_EQ(parse_seed("18446744073709551615"), ~0ULL);
  for (const char* bad : {"", "-1", "12x", "0x", "18446744073709551616", "0x1ffffffffffffffff", "abc"}) {
    EXPECT_THROW(parse_seed(bad), Error) << bad;
  }
}

TEST(Substream, IterationOrderIndependence) {
  // Per-sample first draws are a pure function of the coordinates, so any
  // visiting order reproduces them.
  std::vector<std::uint64_t> forward(256), shuffled(256);
  for (std::uint64_t i = 0; i < 256; ++i) forward[i] = derive_substream(9, 0, i, Purpose::Pitch).next_u64();
  std::vector<std::uint64_t> order(256);
  std::iota(order.begin(), order.end(), 0);
  RngStream perm(1);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[static_cast<std::size_t>(draw_uniform_int(perm, 0, static_cast<std::int64_t>(i)))]);
  }
  for (auto i : order) shuffled[i] = derive_substream(9, 0, i, Purpose::Pitch).next_u64();
  EXPECT_EQ(forward, shuffled);
}

}  // namespace
}  // namespace bgaug
