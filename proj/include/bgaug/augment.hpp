// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "bgaug/background.hpp"
#include "bgaug/raster.hpp"
#include "bgaug/rng.hpp"

namespace bgaug {

enum class AugMode { Aug, BgAug };

std::string_view to_string(AugMode mode) noexcept;
AugMode parse_aug_mode(std::string_view text);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Sampling ranges for the per-sample augmentation knobs.
struct AugRanges {
  Range exposure_gain{0.7, 1.3};
  Range gamma{0.6, 1.4};
  Range dr_lo{0.0, 50.0};
  Range dr_hi{205.0, 255.0};
  Range blur_sigma{0.0, 1.5};
  double blur_probability = 0.5;
  Range noise_sigma{0.0, 8.0};
  Range vignette_f{0.7, 1.6};
  Range vignette_strength{0.0, 1.0};
  int row_offset_lo = 0;
  int row_offset_hi = 64;

  /// Throws ErrorKind::Config if any range is empty or would produce
  /// invalid parameters.
  void validate() const;
};

/// Fully sampled augmentation of one sample. Replaying it reproduces the
/// output bit-exactly.
struct AugParams {
  AugMode mode = AugMode::Aug;
  std::optional<BackgroundChoice> background;  // BgAug only
  int row_offset = 32;
  double exposure_gain = 1.0;
  double gamma = 1.0;
  double dr_lo = 0.0;
  double dr_hi = 255.0;
  double blur_sigma = 0.0;
  double noise_sigma = 0.0;
  std::uint64_t noise_seed = 0;  // initial state of the noise stream
  double vignette_f = 1.0;
  double vignette_strength = 0.0;

  /// Throws ErrorKind::Argument on violated invariants.
  void validate() const;

  friend bool operator==(const AugParams&, const AugParams&) = default;
};

nlohmann::json to_json(const AugParams& params);
AugParams aug_params_from_json(const nlohmann::json& j);

/// Draws every knob for sample (epoch, index) from its own substreams.
/// BgAug requires a pool; Aug never touches it.
AugParams sample_aug_params(AugMode mode, const AugRanges& ranges, const BackgroundPool* pool,
                            std::uint64_t seed, std::uint64_t epoch, std::uint64_t index);

// Pipeline steps.

/// out = round(a * frame + (1 - a) * background), quantized once.
Raster replace_background(const Raster& frame, const AlphaMask& alpha, const Raster& background);

/// Rows [row_offset, row_offset + 96) of a 160x160 frame.
Raster pitch_crop(const Raster& frame, int row_offset);

/// Informational pitch change of a crop relative to the middle crop, degrees.
double offset_to_pitch_delta(int row_offset);

FloatPlane apply_exposure(FloatPlane img, double gain);
FloatPlane apply_gamma(FloatPlane img, double gamma);
FloatPlane reduce_dynamic_range(FloatPlane img, double lo, double hi);
/// Normal(0, sigma^2) per pixel in row-major order, two draws per pixel.
FloatPlane add_noise(FloatPlane img, double sigma, RngStream& rng);
FloatPlane apply_vignette(FloatPlane img, double f, double strength);

/// Cosine-fourth falloff (1 + (r / f)^2)^-2 at normalized radius r.
double vignette_gain(double r, double f);

/// exposure -> gamma -> dynamic range -> blur -> noise -> vignette, in float.
FloatPlane apply_photometric(FloatPlane img, const AugParams& params);

/// Background randomization (BgAug), pitch crop, photometric chain, single
/// final quantization. Returns a 160x96 raster.
Raster augment_sample(const Raster& frame, const AlphaMask* alpha, const BackgroundPool* pool,
                      const AugParams& params);

}  // namespace bgaug
