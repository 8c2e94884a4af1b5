// SPDX-License-Identifier: Apache-2.0
#include "bgaug/augment.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "bgaug/constants.hpp"
#include "bgaug/imaging.hpp"
#include "bgaug/simd/kernels.hpp"

namespace bgaug {

std::string_view to_string(AugMode mode) noexcept { return mode == AugMode::Aug ? "aug" : "bgaug"; }

AugMode parse_aug_mode(std::string_view text) {
  if (text == "aug" || text == "Aug") return AugMode::Aug;
  if (text == "bgaug" || text == "BgAug") return AugMode::BgAug;
  throw Error(ErrorKind::Config, "unknown mode '" + std::string(text) + "' (expected aug or bgaug)");
}

namespace {

void require_config(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::Config, std::string("invalid augmentation range: ") + what);
}

void require_arg(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::Argument, what);
}

bool ordered(const Range& r) { return std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi; }

}  // namespace

void AugRanges::validate() const {
  require_config(ordered(exposure_gain) && exposure_gain.lo > 0.0, "exposure_gain");
  require_config(ordered(gamma) && gamma.lo > 0.0, "gamma");
  require_config(ordered(dr_lo) && dr_lo.lo >= 0.0, "dr_lo");
  require_config(ordered(dr_hi) && dr_hi.hi <= 255.0, "dr_hi");
  require_config(dr_lo.hi < dr_hi.lo, "dr_lo must stay below dr_hi");
  require_config(ordered(blur_sigma) && blur_sigma.lo >= 0.0, "blur_sigma");
  require_config(blur_probability >= 0.0 && blur_probability <= 1.0, "blur_probability");
  require_config(ordered(noise_sigma) && noise_sigma.lo >= 0.0, "noise_sigma");
  require_config(ordered(vignette_f) && vignette_f.lo > 0.0, "vignette_f");
  require_config(ordered(vignette_strength) && vignette_strength.lo >= 0.0 && vignette_strength.hi <= 1.0,
                 "vignette_strength");
  require_config(0 <= row_offset_lo && row_offset_lo <= row_offset_hi && row_offset_hi <= constants::kMaxRowOffset,
                 "row_offset");
}

void AugParams::validate() const {
  require_arg(row_offset >= 0 && row_offset <= constants::kMaxRowOffset,
              "row_offset " + std::to_string(row_offset) + " outside [0,64]");
  require_arg(exposure_gain > 0.0, "exposure_gain must be > 0");
  require_arg(gamma > 0.0, "gamma must be > 0");
  require_arg(0.0 <= dr_lo && dr_lo < dr_hi && dr_hi <= 255.0, "need 0 <= dr_lo < dr_hi <= 255");
  require_arg(blur_sigma >= 0.0, "blur_sigma must be >= 0");
  require_arg(noise_sigma >= 0.0, "noise_sigma must be >= 0");
  require_arg(vignette_f > 0.0, "vignette_f must be > 0");
  require_arg(vignette_strength >= 0.0 && vignette_strength <= 1.0, "vignette_strength outside [0,1]");
  if (mode == AugMode::BgAug && !background) {
    throw Error(ErrorKind::Config, "BgAug parameters without a background choice");
  }
}

nlohmann::json to_json(const AugParams& p) {
  char seed[24];
  std::snprintf(seed, sizeof seed, "0x%016llx", static_cast<unsigned long long>(p.noise_seed));
  nlohmann::json j;
  j["mode"] = to_string(p.mode);
  if (p.background) {
    j["bg_entry"] = p.background->entry;
    j["bg_crop"] = {p.background->crop_x, p.background->crop_y};
  } else {
    j["bg_entry"] = nullptr;
    j["bg_crop"] = nullptr;
  }
  j["row_offset"] = p.row_offset;
  j["exposure_gain"] = p.exposure_gain;
  j["gamma"] = p.gamma;
  j["dr_lo"] = p.dr_lo;
  j["dr_hi"] = p.dr_hi;
  j["blur_sigma"] = p.blur_sigma;
  j["noise_sigma"] = p.noise_sigma;
  j["noise_seed"] = seed;
  j["vignette_f"] = p.vignette_f;
  j["vignette_strength"] = p.vignette_strength;
  return j;
}

AugParams aug_params_from_json(const nlohmann::json& j) {
  try {
    AugParams p;
    p.mode = parse_aug_mode(j.at("mode").get<std::string>());
    if (j.contains("bg_entry") && !j["bg_entry"].is_null()) {
      const auto& crop = j.at("bg_crop");
      p.background = BackgroundChoice{j["bg_entry"].get<std::size_t>(), crop.at(0).get<int>(), crop.at(1).get<int>()};
    }
    p.row_offset = j.at("row_offset").get<int>();
    p.exposure_gain = j.at("exposure_gain").get<double>();
    p.gamma = j.at("gamma").get<double>();
    p.dr_lo = j.at("dr_lo").get<double>();
    p.dr_hi = j.at("dr_hi").get<double>();
    p.blur_sigma = j.at("blur_sigma").get<double>();
    p.noise_sigma = j.at("noise_sigma").get<double>();
    p.noise_seed = parse_seed(j.at("noise_seed").get<std::string>());
    p.vignette_f = j.at("vignette_f").get<double>();
    p.vignette_strength = j.at("vignette_strength").get<double>();
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("bad AugParams record: ") + e.what());
  }
}

AugParams sample_aug_params(AugMode mode, const AugRanges& ranges, const BackgroundPool* pool,
                            std::uint64_t seed, std::uint64_t epoch, std::uint64_t index) {
  AugParams p;
  p.mode = mode;
  if (mode == AugMode::BgAug) {
    if (pool == nullptr) throw Error(ErrorKind::Config, "BgAug sampling needs a background pool");
    RngStream bg = derive_substream(seed, epoch, index, Purpose::Background);
    p.background = pool->choose(bg);
  }

  RngStream pitch = derive_substream(seed, epoch, index, Purpose::Pitch);
  p.row_offset = static_cast<int>(draw_uniform_int(pitch, ranges.row_offset_lo, ranges.row_offset_hi));

  // Frozen draw order: gain, gamma, dr_lo, dr_hi, blur, noise, vignette f, vignette strength.
  RngStream photo = derive_substream(seed, epoch, index, Purpose::Photometric);
  p.exposure_gain = draw_uniform(photo, ranges.exposure_gain.lo, ranges.exposure_gain.hi);
  p.gamma = draw_uniform(photo, ranges.gamma.lo, ranges.gamma.hi);
  p.dr_lo = draw_uniform(photo, ranges.dr_lo.lo, ranges.dr_lo.hi);
  p.dr_hi = draw_uniform(photo, ranges.dr_hi.lo, ranges.dr_hi.hi);
  // One draw decides both whether to blur and how much.
  const double u = draw_uniform(photo, 0.0, 1.0);
  if (u < ranges.blur_probability) {
    p.blur_sigma = ranges.blur_sigma.lo + (u / ranges.blur_probability) * (ranges.blur_sigma.hi - ranges.blur_sigma.lo);
  }
  p.noise_sigma = draw_uniform(photo, ranges.noise_sigma.lo, ranges.noise_sigma.hi);
  p.vignette_f = draw_uniform(photo, ranges.vignette_f.lo, ranges.vignette_f.hi);
  p.vignette_strength = draw_uniform(photo, ranges.vignette_strength.lo, ranges.vignette_strength.hi);

  p.noise_seed = derive_substream(seed, epoch, index, Purpose::Noise).state();
  return p;
}

Raster replace_background(const Raster& frame, const AlphaMask& alpha, const Raster& background) {
  if (!frame.same_shape(background) || !frame.same_shape(alpha.width(), alpha.height())) {
    throw Error(ErrorKind::Argument, "frame, alpha and background must share dimensions");
  }
  FloatPlane out(frame.width(), frame.height());
  simd::active_kernels().composite(frame.data(), background.data(), alpha.plane().data(), out.data(), frame.size());
  return quantize(out);
}

Raster pitch_crop(const Raster& frame, int row_offset) {
  const int max_offset = frame.height() - constants::kCropHeight;
  if (max_offset < 0 || row_offset < 0 || row_offset > max_offset) {
    throw Error(ErrorKind::Argument, "row_offset " + std::to_string(row_offset) + " outside [0," +
                                         std::to_string(std::max(max_offset, 0)) + "]");
  }
  return crop(frame, 0, row_offset, frame.width(), constants::kCropHeight);
}

double offset_to_pitch_delta(int row_offset) {
  if (row_offset < 0 || row_offset > constants::kMaxRowOffset) {
    throw Error(ErrorKind::Argument, "row_offset " + std::to_string(row_offset) + " outside [0,64]");
  }
  const double per_row = constants::kTopCropPitchDelta / constants::kEvalRowOffset;
  return (constants::kEvalRowOffset - row_offset) * per_row;
}

FloatPlane apply_exposure(FloatPlane img, double gain) {
  require_arg(gain > 0.0, "exposure gain must be > 0");
  simd::active_kernels().scale(img.data(), img.size(), static_cast<float>(gain));
  return img;
}

FloatPlane apply_gamma(FloatPlane img, double gamma) {
  require_arg(gamma > 0.0, "gamma must be > 0");
  simd::active_kernels().gamma(img.data(), img.size(), static_cast<float>(gamma));
  return img;
}

FloatPlane reduce_dynamic_range(FloatPlane img, double lo, double hi) {
  require_arg(0.0 <= lo && lo < hi && hi <= 255.0, "need 0 <= lo < hi <= 255");
  simd::active_kernels().affine(img.data(), img.size(), static_cast<float>(lo), static_cast<float>((hi - lo) / 255.0));
  return img;
}

FloatPlane add_noise(FloatPlane img, double sigma, RngStream& rng) {
  require_arg(sigma >= 0.0, "noise sigma must be >= 0");
  if (sigma == 0.0) return img;
  std::vector<float> noise(img.size());
  for (float& n : noise) n = static_cast<float>(draw_normal(rng, 0.0, sigma));
  simd::active_kernels().add(img.data(), noise.data(), img.size());
  return img;
}

double vignette_gain(double r, double f) {
  const double t = 1.0 + (r / f) * (r / f);
  return 1.0 / (t * t);
}

FloatPlane apply_vignette(FloatPlane img, double f, double strength) {
  require_arg(f > 0.0 && std::isfinite(f), "vignette f must be > 0");
  require_arg(strength >= 0.0 && strength <= 1.0, "vignette strength outside [0,1]");
  if (strength == 0.0 || (img.width() == 1 && img.height() == 1)) return img;
  simd::active_kernels().vignette(img.data(), img.width(), img.height(), static_cast<float>(f),
                                  static_cast<float>(strength));
  return img;
}

FloatPlane apply_photometric(FloatPlane img, const AugParams& params) {
  img = apply_exposure(std::move(img), params.exposure_gain);
  img = apply_gamma(std::move(img), params.gamma);
  img = reduce_dynamic_range(std::move(img), params.dr_lo, params.dr_hi);
  img = gaussian_blur(img, params.blur_sigma);
  RngStream noise(params.noise_seed);
  img = add_noise(std::move(img), params.noise_sigma, noise);
  return apply_vignette(std::move(img), params.vignette_f, params.vignette_strength);
}

Raster augment_sample(const Raster& frame, const AlphaMask* alpha, const BackgroundPool* pool,
                      const AugParams& params) {
  params.validate();
  if (!frame.same_shape(constants::kFrameWidth, constants::kFrameHeight)) {
    throw Error(ErrorKind::Format, "frames must be 160x160, got " + std::to_string(frame.width()) + "x" +
                                       std::to_string(frame.height()));
  }
  const int w = frame.width();
  const std::size_t offset = static_cast<std::size_t>(params.row_offset) * static_cast<std::size_t>(w);
  const std::size_t n = static_cast<std::size_t>(w) * constants::kCropHeight;
  const auto& k = simd::active_kernels();

  // Compositing is per pixel, so only the rows that survive the pitch crop
  // are blended.
  FloatPlane work(w, constants::kCropHeight);
  if (params.mode == AugMode::BgAug) {
    if (alpha == nullptr) throw Error(ErrorKind::Config, "BgAug needs an alpha mask");
    if (pool == nullptr) throw Error(ErrorKind::Config, "BgAug needs a background pool");
    if (!frame.same_shape(alpha->width(), alpha->height())) {
      throw Error(ErrorKind::Argument, "alpha mask does not match frame size");
    }
    const Raster bg = pool->render(*params.background);
    if (!frame.same_shape(bg)) throw Error(ErrorKind::Config, "background pool target size differs from frame size");
    k.composite(frame.data() + offset, bg.data() + offset, alpha->plane().data() + offset, work.data(), n);
  } else {
    k.widen(frame.data() + offset, work.data(), n);
  }
  return quantize(apply_photometric(std::move(work), params));
}

}  // namespace bgaug
