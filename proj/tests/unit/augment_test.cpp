// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <thread>

#include "bgaug/augment.hpp"
#include "bgaug/constants.hpp"
#include "bgaug/imaging.hpp"
#include "bgaug/mask.hpp"
#include "support/synthetic.hpp"

namespace bgaug {
namespace {

AugParams identity_params(AugMode mode = AugMode::Aug) {
  AugParams p;
  p.mode = mode;
  if (mode == AugMode::BgAug) p.background = BackgroundChoice{0, 0, 0};
  return p;
}

FloatPlane random_plane(int w, int h, std::uint64_t seed, float lo = 0.0f, float hi = 255.0f) {
  RngStream rng(seed);
  FloatPlane p(w, h);
  for (float& v : p.pixels()) v = static_cast<float>(draw_uniform(rng, lo, hi));
  return p;
}

// Pool whose loader counts how often it is asked for pixels.
BackgroundPool counting_pool(std::atomic<int>& loads) {
  std::vector<PoolEntry> entries = {{"stub", 160, 160}};
  return BackgroundPool(std::move(entries), 160, 160, [&loads](const PoolEntry&) {
    ++loads;
    return Raster(160, 160, std::uint8_t{9});
  });
}

TEST(ReplaceBackground, OpaqueAndTransparent) {
  const auto f = testing::make_frame(1, 0);
  const Raster bg = testing::make_pattern(160, 160, 2);
  EXPECT_EQ(replace_background(f.frame, AlphaMask(160, 160, 1.0f), bg), f.frame);
  EXPECT_EQ(replace_background(f.frame, AlphaMask(160, 160, 0.0f), bg), bg);
}

TEST(ReplaceBackground, WorkedExample) {
  const Raster frame(1, 1, std::uint8_t{100});
  const Raster bg(1, 1, std::uint8_t{200});
  EXPECT_EQ(replace_background(frame, AlphaMask(1, 1, 0.25f), bg).at(0, 0), 175);
}

TEST(ReplaceBackground, SizeMismatchIsArgumentError) {
  try {
    replace_background(Raster(4, 4), AlphaMask(4, 3, 1.0f), Raster(4, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Argument);
  }
}

TEST(ReplaceBackground, BoundedByInputs) {
  RngStream rng(5);
  for (int t = 0; t < 200; ++t) {
    const Raster f = testing::random_raster(8, 8, rng);
    const Raster b = testing::random_raster(8, 8, rng);
    FloatPlane a(8, 8);
    for (float& v : a.pixels()) v = static_cast<float>(rng.next_unit());
    const Raster out = replace_background(f, AlphaMask(a), b);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const int lo = std::min(f.pixels()[i], b.pixels()[i]);
      const int hi = std::max(f.pixels()[i], b.pixels()[i]);
      ASSERT_GE(out.pixels()[i], lo);
      ASSERT_LE(out.pixels()[i], hi);
    }
  }
}

TEST(PitchCrop, OffsetsAndBounds) {
  const auto f = testing::make_frame(2, 1);
  EXPECT_EQ(pitch_crop(f.frame, 32), crop(f.frame, 0, 32, 160, 96));
  EXPECT_EQ(pitch_crop(f.frame, 0), crop(f.frame, 0, 0, 160, 96));
  EXPECT_EQ(pitch_crop(f.frame, 64).at(5, 95), f.frame.at(5, 159));
  EXPECT_THROW(pitch_crop(f.frame, 70), Error);
  EXPECT_THROW(pitch_crop(f.frame, -1), Error);
}

TEST(PitchDelta, LinearModel) {
  EXPECT_DOUBLE_EQ(offset_to_pitch_delta(0), 14.0);
  EXPECT_DOUBLE_EQ(offset_to_pitch_delta(32), 0.0);
  EXPECT_DOUBLE_EQ(offset_to_pitch_delta(64), -14.0);
  EXPECT_DOUBLE_EQ(offset_to_pitch_delta(16), 7.0);
  EXPECT_THROW(offset_to_pitch_delta(65), Error);
}

TEST(Exposure, Examples) {
  const FloatPlane p = random_plane(16, 4, 1);
  EXPECT_EQ(apply_exposure(p, 1.0), p);
  EXPECT_FLOAT_EQ(apply_exposure(FloatPlane(1, 1, 100.0f), 1.3).at(0, 0), 130.0f);
  const FloatPlane over = apply_exposure(FloatPlane(1, 1, 200.0f), 1.5);
  EXPECT_FLOAT_EQ(over.at(0, 0), 300.0f);
  EXPECT_EQ(quantize(over).at(0, 0), 255);
  EXPECT_THROW(apply_exposure(p, 0.0), Error);
  EXPECT_THROW(apply_exposure(p, -1.0), Error);
}

TEST(Gamma, Examples) {
  const FloatPlane p = random_plane(16, 4, 2);
  const FloatPlane id = apply_gamma(p, 1.0);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(id.pixels()[i], p.pixels()[i], 255 * 1e-6);
  for (double g : {0.6, 1.0, 1.4, 2.0}) {
    const FloatPlane ends = apply_gamma(FloatPlane(2, 1, std::vector<float>{0.0f, 255.0f}), g);
    EXPECT_EQ(ends.at(0, 0), 0.0f);
    EXPECT_NEAR(ends.at(1, 0), 255.0f, 1e-4);
  }
  EXPECT_NEAR(apply_gamma(FloatPlane(1, 1, 64.0f), 2.0).at(0, 0), 255.0 * std::pow(64.0 / 255.0, 2.0), 1e-3);
  EXPECT_NEAR(apply_gamma(FloatPlane(1, 1, 64.0f), 2.0).at(0, 0), 16.06, 0.01);
  EXPECT_THROW(apply_gamma(p, 0.0), Error);
}

TEST(DynamicRange, Examples) {
  const FloatPlane p = random_plane(16, 4, 3);
  EXPECT_EQ(reduce_dynamic_range(p, 0.0, 255.0), p);
  const FloatPlane e = reduce_dynamic_range(FloatPlane(2, 1, std::vector<float>{0.0f, 255.0f}), 10.0, 245.0);
  EXPECT_FLOAT_EQ(e.at(0, 0), 10.0f);
  EXPECT_FLOAT_EQ(e.at(1, 0), 245.0f);
  EXPECT_THROW(reduce_dynamic_range(p, 100.0, 100.0), Error);
  EXPECT_THROW(reduce_dynamic_range(p, 120.0, 100.0), Error);
}

TEST(Noise, ZeroSigmaIdentityAndDeterminism) {
  const FloatPlane p = random_plane(160, 160, 4);
  RngStream r0(1);
  EXPECT_EQ(add_noise(p, 0.0, r0), p);
  RngStream a(99), b(99);
  const FloatPlane x = add_noise(p, 5.0, a);
  EXPECT_EQ(x, add_noise(p, 5.0, b));
  EXPECT_EQ(a.counter(), 2u * 160 * 160);
  RngStream neg(1);
  EXPECT_THROW(add_noise(p, -1.0, neg), Error);
}

TEST(Noise, RowMajorNormalDraws) {
  const FloatPlane zero(7, 3, 0.0f);
  RngStream a(1234);
  const FloatPlane n = add_noise(zero, 3.0, a);
  RngStream b(1234);
  for (float v : n.pixels()) EXPECT_EQ(v, static_cast<float>(draw_normal(b, 0.0, 3.0)));
}

TEST(Noise, MeanOfField) {
  const FloatPlane zero(160, 160, 0.0f);
  RngStream rng = derive_substream(8, 0, 0, Purpose::Noise);
  const FloatPlane n = add_noise(zero, 8.0, rng);
  double sum = 0.0;
  for (float v : n.pixels()) sum += v;
  EXPECT_NEAR(sum / static_cast<double>(n.size()), 0.0, 0.2);
}

// Reference vignette gain evaluated in double from the radius definition.
double ref_vignette(int x, int y, int w, int h, double f) {
  const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
  const double r = std::hypot(x - cx, y - cy) / std::hypot(cx, cy);
  return std::pow(1.0 + (r / f) * (r / f), -2.0);
}

TEST(Vignette, CenterCornerAndStrengthZero) {
  const FloatPlane p = random_plane(160, 96, 5);
  EXPECT_EQ(apply_vignette(p, 1.0, 0.0), p);

  const FloatPlane ones(161, 97, 1.0f);  // odd size: one pixel sits on the center
  for (double f : {0.5, 1.0, 1.6}) EXPECT_EQ(apply_vignette(ones, f, 1.0).at(80, 48), 1.0f);

  const FloatPlane corner = apply_vignette(FloatPlane(160, 96, 200.0f), 1.0, 1.0);
  EXPECT_EQ(corner.at(0, 0), 50.0f);
  EXPECT_EQ(corner.at(159, 0), 50.0f);
  EXPECT_EQ(corner.at(0, 95), 50.0f);
  EXPECT_EQ(corner.at(159, 95), 50.0f);
  EXPECT_EQ(vignette_gain(1.0, 1.0), 0.25);
  EXPECT_EQ(vignette_gain(0.0, 0.7), 1.0);
}

TEST(Vignette, MatchesReferenceEverywhere) {
  const FloatPlane ones(160, 96, 1.0f);
  for (double f : {0.7, 1.0, 1.6}) {
    for (double s : {0.3, 1.0}) {
      const FloatPlane out = apply_vignette(ones, f, s);
      for (int y = 0; y < 96; ++y) {
        for (int x = 0; x < 160; ++x) {
          const double want = (1.0 - s) + s * ref_vignette(x, y, 160, 96, f);
          ASSERT_NEAR(out.at(x, y), want, 1e-6) << x << "," << y;
        }
      }
    }
  }
  EXPECT_THROW(apply_vignette(ones, 0.0, 0.5), Error);
  EXPECT_THROW(apply_vignette(ones, 1.0, 1.5), Error);
}

TEST(Vignette, GainIsRadiallyNonIncreasing) {
  for (double f : {0.5, 0.7, 1.0, 1.6, 3.0}) {
    double prev = vignette_gain(0.0, f);
    for (int i = 1; i <= 1000; ++i) {
      const double g = vignette_gain(i / 1000.0, f);
      ASSERT_LE(g, prev);
      prev = g;
    }
  }
}

TEST(AugmentSample, IdentityAugEqualsCenterCrop) {
  const auto f = testing::make_frame(3, 0);
  const Raster out = augment_sample(f.frame, nullptr, nullptr, identity_params());
  EXPECT_EQ(out.width(), 160);
  EXPECT_EQ(out.height(), 96);
  EXPECT_EQ(out, crop(f.frame, 0, 32, 160, 96));
}

TEST(AugmentSample, OpaqueBgAugEqualsCenterCrop) {
  const auto f = testing::make_frame(3, 1);
  const BackgroundPool pool = BackgroundPool::from_images({testing::make_pattern(200, 180, 1)}, 160, 160);
  const AlphaMask ones(160, 160, 1.0f);
  EXPECT_EQ(augment_sample(f.frame, &ones, &pool, identity_params(AugMode::BgAug)), crop(f.frame, 0, 32, 160, 96));
}

TEST(AugmentSample, TransparentBgAugShowsBackground) {
  const auto f = testing::make_frame(3, 2);
  const BackgroundPool pool = BackgroundPool::from_images({testing::make_pattern(200, 180, 1)}, 160, 160);
  const AlphaMask zeros(160, 160, 0.0f);
  AugParams p = identity_params(AugMode::BgAug);
  p.background = BackgroundChoice{0, 12, 0};
  p.row_offset = 10;
  EXPECT_EQ(augment_sample(f.frame, &zeros, &pool, p), crop(pool.render(*p.background), 0, 10, 160, 96));
}

TEST(AugmentSample, BgAugWithoutAlphaIsConfigError) {
  const auto f = testing::make_frame(3, 2);
  const BackgroundPool pool = BackgroundPool::from_images({testing::make_pattern(160, 160, 1)}, 160, 160);
  try {
    augment_sample(f.frame, nullptr, &pool, identity_params(AugMode::BgAug));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
  }
}

TEST(AugmentSample, AugModeNeverTouchesPoolOrMask) {
  std::atomic<int> loads{0};
  const BackgroundPool pool = counting_pool(loads);
  const auto f = testing::make_frame(4, 0);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const AugParams p = sample_aug_params(AugMode::Aug, AugRanges{}, &pool, 11, 0, i);
    EXPECT_FALSE(p.background);
    (void)augment_sample(f.frame, nullptr, &pool, p);
  }
  EXPECT_EQ(loads.load(), 0);

  const AlphaMask ones(160, 160, 1.0f);
  (void)augment_sample(f.frame, &ones, &pool, sample_aug_params(AugMode::BgAug, AugRanges{}, &pool, 11, 0, 0));
  EXPECT_EQ(loads.load(), 1);
}

TEST(AugmentSample, ReplayIsBitExact) {
  const auto f = testing::make_frame(5, 0);
  const BackgroundPool pool = BackgroundPool::from_images(
      {testing::make_pattern(320, 160, 1), testing::make_pattern(170, 400, 2)}, 160, 160);
  const AlphaMask alpha = soften_mask(binarize_mask(f.person_mask), 1.0);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const AugParams p = sample_aug_params(AugMode::BgAug, AugRanges{}, &pool, 0xabcdef, 2, i);
    const AugParams q = aug_params_from_json(nlohmann::json::parse(to_json(p).dump()));
    EXPECT_EQ(p, q);
    EXPECT_EQ(augment_sample(f.frame, &alpha, &pool, p), augment_sample(f.frame, &alpha, &pool, q));
  }
}

TEST(AugmentSample, PerPixelOpsCommuteWithCrop) {
  const auto f = testing::make_frame(6, 0);
  for (std::uint64_t i = 0; i < 30; ++i) {
    AugParams p = sample_aug_params(AugMode::Aug, AugRanges{}, nullptr, 3, 0, i);
    p.blur_sigma = 0.0;
    p.noise_sigma = 0.0;
    p.vignette_strength = 0.0;
    const Raster a = augment_sample(f.frame, nullptr, nullptr, p);
    AugParams full = p;
    const Raster b = crop(quantize(apply_photometric(to_float(f.frame), full)), 0, p.row_offset, 160, 96);
    for (std::size_t k = 0; k < a.size(); ++k) ASSERT_LE(std::abs(a.pixels()[k] - b.pixels()[k]), 1);
  }
}

TEST(AugmentSample, ConcurrentCallsAgreeWithSerial) {
  const auto f = testing::make_frame(7, 0);
  const BackgroundPool pool = BackgroundPool::from_images({testing::make_pattern(240, 200, 3)}, 160, 160);
  const AlphaMask alpha = soften_mask(binarize_mask(f.person_mask), 1.0);
  std::vector<AugParams> params;
  std::vector<Raster> serial;
  for (std::uint64_t i = 0; i < 32; ++i) {
    params.push_back(sample_aug_params(AugMode::BgAug, AugRanges{}, &pool, 17, 0, i));
    serial.push_back(augment_sample(f.frame, &alpha, &pool, params.back()));
  }
  std::atomic<int> bad{0};
  {
    std::vector<std::jthread> threads;
    for (int t = 0; t < 4; ++t) {
      threads.emplace_back([&, t] {
        for (std::size_t i = static_cast<std::size_t>(t); i < 32; i += 4) {
          if (!(augment_sample(f.frame, &alpha, &pool, params[31 - i]) == serial[31 - i])) ++bad;
        }
      });
    }
  }
  EXPECT_EQ(bad.load(), 0);
}

TEST(SampleParams, RangesAndDrawCounts) {
  const AugRanges r;
  const BackgroundPool pool = BackgroundPool::from_images({testing::make_pattern(320, 160, 1)}, 160, 160);
  int blurred = 0;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const AugParams p = sample_aug_params(AugMode::BgAug, r, &pool, 1, 0, i);
    ASSERT_NO_THROW(p.validate());
    ASSERT_GE(p.row_offset, 0);
    ASSERT_LE(p.row_offset, 64);
    ASSERT_GE(p.exposure_gain, 0.7);
    ASSERT_LT(p.exposure_gain, 1.3);
    ASSERT_GE(p.gamma, 0.6);
    ASSERT_LT(p.gamma, 1.4);
    ASSERT_LT(p.dr_lo, 50.0);
    ASSERT_GE(p.dr_hi, 205.0);
    ASSERT_LE(p.blur_sigma, 1.5);
    ASSERT_LT(p.noise_sigma, 8.0);
    ASSERT_GE(p.vignette_f, 0.7);
    ASSERT_LE(p.vignette_strength, 1.0);
    ASSERT_TRUE(p.background);
    blurred += p.blur_sigma > 0.0;
  }
  EXPECT_NEAR(blurred / 2000.0, 0.5, 0.05);

  // The photometric stream is consumed in a fixed order of eight draws.
  const AugParams p = sample_aug_params(AugMode::Aug, r, nullptr, 42, 1, 9);
  RngStream s = derive_substream(42, 1, 9, Purpose::Photometric);
  EXPECT_EQ(p.exposure_gain, draw_uniform(s, 0.7, 1.3));
  EXPECT_EQ(p.gamma, draw_uniform(s, 0.6, 1.4));
  EXPECT_EQ(p.dr_lo, draw_uniform(s, 0.0, 50.0));
  EXPECT_EQ(p.dr_hi, draw_uniform(s, 205.0, 255.0));
  (void)draw_uniform(s, 0.0, 1.0);
  EXPECT_EQ(p.noise_sigma, draw_uniform(s, 0.0, 8.0));
  EXPECT_EQ(p.vignette_f, draw_uniform(s, 0.7, 1.6));
  EXPECT_EQ(p.vignette_strength, draw_uniform(s, 0.0, 1.0));
  EXPECT_EQ(s.counter(), static_cast<std::uint64_t>(kPhotometricDraws));
  RngStream pitch = derive_substream(42, 1, 9, Purpose::Pitch);
  EXPECT_EQ(p.row_offset, draw_uniform_int(pitch, 0, 64));
  EXPECT_EQ(p.noise_seed, derive_substream(42, 1, 9, Purpose::Noise).state());
}

TEST(SampleParams, BgAugNeedsPool) {
  EXPECT_THROW(sample_aug_params(AugMode::BgAug, AugRanges{}, nullptr, 1, 0, 0), Error);
}

TEST(SampleParams, JsonShape) {
  AugParams p = identity_params(AugMode::BgAug);
  p.background = BackgroundChoice{3, 12, 40};
  p.noise_seed = 0x1234;
  const auto j = to_json(p);
  EXPECT_EQ(j["mode"], "bgaug");
  EXPECT_EQ(j["bg_entry"], 3);
  EXPECT_EQ(j["bg_crop"][1], 40);
  EXPECT_EQ(j["noise_seed"], "0x0000000000001234");
  EXPECT_TRUE(to_json(identity_params())["bg_entry"].is_null());
  EXPECT_THROW(aug_params_from_json(nlohmann::json::parse(R"({"mode":"aug"})")), Error);
}

TEST(Ranges, ValidationCatchesBadConfigs) {
  EXPECT_NO_THROW(AugRanges{}.validate());
  AugRanges r;
  r.gamma = {0.0, 1.0};
  EXPECT_THROW(r.validate(), Error);
  r = AugRanges{};
  r.dr_lo = {0, 210};
  EXPECT_THROW(r.validate(), Error);
  r = AugRanges{};
  r.row_offset_hi = 65;
  EXPECT_THROW(r.validate(), Error);
  r = AugRanges{};
  r.vignette_strength = {0.5, 0.2};
  EXPECT_THROW(r.validate(), Error);
}

}  // namespace
}  // namespace bgaug
