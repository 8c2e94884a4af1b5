// SPDX-License-Identifier: Apache-2.0
#pragma once

// Deterministic synthetic data for tests: "lab" frames with an elliptical
// person and a rectangular chair, their masks, and background pools.

#include <cstdint>
#include <filesystem>
#include <string>

#include "bgaug/pose.hpp"
#include "bgaug/raster.hpp"
#include "bgaug/rng.hpp"

namespace bgaug::testing {

struct SyntheticFrame {
  Raster frame{160, 160};
  Raster person_mask{160, 160};  // 0 / 255
  Raster chair_mask{160, 160};
  int person_box[4] = {0, 0, 0, 0};  // x0, y0, w, h
  int chair_box[4] = {0, 0, 0, 0};
  RelativePose label;
};

SyntheticFrame make_frame(std::uint64_t seed, std::uint64_t index);

/// Textured background image of arbitrary size.
Raster make_pattern(int width, int height, std::uint64_t seed);
RgbImage make_rgb_pattern(int width, int height, std::uint64_t seed);

/// Raster filled with uniform random bytes.
Raster random_raster(int width, int height, RngStream& rng);

/// Frames, raw person/chair masks, per-frame detections JSON, a 4-image pool
/// and manifest.json (no prepared masks). Layout:
///   <dir>/manifest.json, frames/, raw_masks/, det/, pool/
void write_detection_fixture(const std::filesystem::path& dir, int n_frames, std::uint64_t seed);

/// Frames with prepared (softened) masks already referenced by the manifest,
/// plus a 4-image pool. Layout: <dir>/manifest.json, frames/, masks/, pool/
void write_prepared_dataset(const std::filesystem::path& dir, int n_frames, std::uint64_t seed);

/// Writes the standard 4-image pool (two gray PNGs, one RGB PNG, one PGM).
void write_pool(const std::filesystem::path& dir, std::uint64_t seed);

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace bgaug::testing
