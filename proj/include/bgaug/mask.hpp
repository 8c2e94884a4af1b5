// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bgaug/raster.hpp"

namespace bgaug {

struct BoundingBox {
  int x0 = 0;
  int y0 = 0;
  int w = 0;
  int h = 0;

  long long area() const noexcept { return static_cast<long long>(w) * h; }
};

struct Detection {
  std::string class_label;
  double score = 0.0;
  BoundingBox bbox;
  std::filesystem::path mask_ref;
};

/// Largest-area "person" detection; ties go to the higher score, then the
/// earlier list position.
std::optional<Detection> select_primary_person(const std::vector<Detection>& detections);

/// Index-returning variant of select_primary_person.
std::optional<std::size_t> primary_person_index(const std::vector<Detection>& detections);

/// Parses a per-frame detections JSON array. Relative mask paths are resolved
/// against the detections file's directory. Boxes are checked against the
/// frame bounds when frame dimensions are given.
std::vector<Detection> read_detections(const std::filesystem::path& path, int frame_w = 0,
                                       int frame_h = 0);

/// Binary alpha from an 8-bit raster: value >= 128 -> 1, else 0.
AlphaMask binarize_mask(const Raster& mask);

/// Loads a raw segmentation mask file and binarizes it.
AlphaMask decode_mask(const std::filesystem::path& mask_ref, int frame_w, int frame_h);

/// Gaussian-softened alpha, clamped to [0,1]. sigma == 0 is identity.
AlphaMask soften_mask(const AlphaMask& mask, double sigma);

/// Loads a prepared (soft) mask: alpha = value / 255.
AlphaMask load_prepared_mask(const std::filesystem::path& path, int frame_w, int frame_h);

}  // namespace bgaug
