// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "bgaug/augment.hpp"
#include "bgaug/background.hpp"
#include "bgaug/dataset_writer.hpp"
#include "bgaug/epoch.hpp"
#include "bgaug/manifest.hpp"

namespace bgaug {

struct MaskPrepOptions {
  std::filesystem::path manifest;
  std::filesystem::path out_dir;
  double sigma = constants::kMaskSigma;  // 0 disables softening
};

/// Selects the subject in every frame's detections, softens its mask and
/// writes <out_dir>/masks/<id>.png, the selected detection as
/// <out_dir>/masks/<id>.det.json, and <out_dir>/manifest.json pointing at
/// the new masks. Frames without a person keep no mask and are counted.
nlohmann::json run_mask_prep(const MaskPrepOptions& options);

struct AugmentOptions {
  std::filesystem::path manifest;
  std::optional<std::filesystem::path> pool;  // required for BgAug
  std::filesystem::path out_dir;
  EpochPlan plan;
  AugRanges ranges;
  int workers = 1;
  ArchiveFormat format = ArchiveFormat::Packed;
  bool write_validation = true;
};

/// Writes train (and validation) archives plus <out_dir>/manifest.json with
/// seed, plan and content digests. Output bytes do not depend on `workers`.
nlohmann::json run_augment(const AugmentOptions& options);

/// Renders samples in parallel and feeds them to the writer in sample order.
void render_samples(const DatasetManifest& manifest, const std::vector<SampleSpec>& specs,
                    const BackgroundPool* pool, int workers, DatasetWriter& writer);

/// 1 x (n + 1) grid of 160x96 tiles: the middle crop of the chosen frame
/// followed by n augmentations of it.
Raster make_preview(const DatasetManifest& manifest, std::size_t entry, const BackgroundPool* pool,
                    AugMode mode, std::uint64_t seed, int n, const AugRanges& ranges);

/// Middle-96-row crops of every frame plus labels.csv, no augmentation.
nlohmann::json run_center_crop(const std::filesystem::path& manifest,
                               const std::filesystem::path& out_dir);

nlohmann::json pool_stats(const BackgroundPool& pool);

}  // namespace bgaug
