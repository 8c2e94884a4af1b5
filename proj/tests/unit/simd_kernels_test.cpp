// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstring>
#include <vector>

#include "bgaug/rng.hpp"
#include "bgaug/simd/kernels.hpp"

namespace bgaug::simd {
namespace {

// Every ISA variant must agree with the scalar reference bit for bit.

std::vector<float> random_floats(std::size_t n, float lo, float hi, std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<float> v(n);
  for (float& x : v) x = static_cast<float>(draw_uniform(rng, lo, hi));
  return v;
}

std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng.next_u64() >> 56);
  return v;
}

bool bit_equal(const std::vector<float>& a, const std::vector<float>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0;
}

class KernelEquivalence : public ::testing::TestWithParam<const KernelTable*> {
 protected:
  const KernelTable& ref = scalar_kernels();
  const KernelTable& simd = *GetParam();
};

// Lengths straddle vector widths to exercise the scalar tails.
const std::size_t kLengths[] = {1, 3, 7, 8, 9, 15, 16, 17, 31, 160, 15360 + 5};

TEST_P(KernelEquivalence, Widen) {
  for (std::size_t n : kLengths) {
    const auto in = random_bytes(n, n);
    std::vector<float> a(n), b(n);
    ref.widen(in.data(), a.data(), n);
    simd.widen(in.data(), b.data(), n);
    EXPECT_TRUE(bit_equal(a, b)) << n;
  }
}

TEST_P(KernelEquivalence, Composite) {
  for (std::size_t n : kLengths) {
    const auto fg = random_bytes(n, 1 + n);
    const auto bg = random_bytes(n, 2 + n);
    const auto alpha = random_floats(n, 0.0f, 1.0f, 3 + n);
    std::vector<float> a(n), b(n);
    ref.composite(fg.data(), bg.data(), alpha.data(), a.data(), n);
    simd.composite(fg.data(), bg.data(), alpha.data(), b.data(), n);
    EXPECT_TRUE(bit_equal(a, b)) << n;
  }
}

TEST_P(KernelEquivalence, ScaleAffineGammaAdd) {
  for (std::size_t n : kLengths) {
    auto a = random_floats(n, -20.0f, 300.0f, 4 + n);
    auto b = a;
    const auto other = random_floats(n, -10.0f, 10.0f, 5 + n);
    ref.scale(a.data(), n, 1.2345f);
    simd.scale(b.data(), n, 1.2345f);
    ref.affine(a.data(), n, 13.5f, 0.87f);
    simd.affine(b.data(), n, 13.5f, 0.87f);
    ref.gamma(a.data(), n, 0.73f);
    simd.gamma(b.data(), n, 0.73f);
    ref.add(a.data(), other.data(), n);
    simd.add(b.data(), other.data(), n);
    EXPECT_TRUE(bit_equal(a, b)) << n;
  }
}

TEST_P(KernelEquivalence, Convolutions) {
  const std::vector<float> taps = {0.0044f, 0.054f, 0.242f, 0.3992f, 0.242f, 0.054f, 0.0044f};
  for (std::size_t n : kLengths) {
    const auto padded = random_floats(n + taps.size() - 1, 0.0f, 255.0f, 6 + n);
    std::vector<float> a(n), b(n);
    ref.convolve_row(padded.data(), a.data(), n, taps.data(), taps.size());
    simd.convolve_row(padded.data(), b.data(), n, taps.data(), taps.size());
    EXPECT_TRUE(bit_equal(a, b)) << n;

    std::vector<std::vector<float>> rows;
    std::vector<const float*> ptrs;
    for (std::size_t j = 0; j < taps.size(); ++j) rows.push_back(random_floats(n, 0.0f, 255.0f, 100 * j + n));
    for (const auto& r : rows) ptrs.push_back(r.data());
    ref.convolve_cols(ptrs.data(), a.data(), n, taps.data(), taps.size());
    simd.convolve_cols(ptrs.data(), b.data(), n, taps.data(), taps.size());
    EXPECT_TRUE(bit_equal(a, b)) << n;
  }
}

TEST_P(KernelEquivalence, Vignette) {
  for (auto [w, h] : {std::pair{160, 96}, {9, 9}, {17, 3}, {1, 12}, {160, 160}}) {
    auto a = random_floats(static_cast<std::size_t>(w * h), 0.0f, 255.0f, static_cast<std::uint64_t>(w * 1000 + h));
    auto b = a;
    ref.vignette(a.data(), w, h, 0.83f, 0.61f);
    simd.vignette(b.data(), w, h, 0.83f, 0.61f);
    EXPECT_TRUE(bit_equal(a, b)) << w << "x" << h;
  }
}

TEST_P(KernelEquivalence, Quantize) {
  for (std::size_t n : kLengths) {
    auto v = random_floats(n, -40.0f, 300.0f, 7 + n);
    if (n > 4) {
      v[0] = 0.5f;
      v[1] = 254.5f;
      v[2] = -0.5f;
      v[3] = 1e9f;
    }
    std::vector<std::uint8_t> a(n), b(n);
    ref.quantize(v.data(), a.data(), n);
    simd.quantize(v.data(), b.data(), n);
    EXPECT_EQ(a, b) << n;
  }
}

INSTANTIATE_TEST_SUITE_P(AllIsas, KernelEquivalence, ::testing::ValuesIn(available_kernels()),
                         [](const ::testing::TestParamInfo<const KernelTable*>& info) {
                           return std::string(info.param->name);
                         });

TEST(KernelDispatch, ScalarAlwaysAvailableAndActiveIsListed) {
  const auto tables = available_kernels();
  ASSERT_FALSE(tables.empty());
  EXPECT_EQ(tables.front()->isa, Isa::Scalar);
  bool listed = false;
  for (const auto* t : tables) listed |= (t == &active_kernels());
  EXPECT_TRUE(listed);
}

}  // namespace
}  // namespace bgaug::simd
