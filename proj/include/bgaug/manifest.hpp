// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bgaug/pose.hpp"

namespace bgaug {

struct ManifestEntry {
  std::string frame;                      // relative to frame_dir
  std::optional<std::string> mask;        // prepared mask, relative to the manifest directory
  std::optional<std::string> detections;  // relative to the manifest directory
  RelativePose label;
  std::string subject_id;
  std::optional<int> override_person_index;  // index into the detections list
};

/// A dataset listing: frames, optional masks and detections, and labels.
///
/// Manifest JSON:
///   {"version": 1, "frame_dir": "frames",
///    "entries": [{"frame": "f0.png", "mask": "masks/f0.png",
///                 "detections": "det/f0.json",
///                 "label": {"x": 1.2, "y": -0.1, "phi": 0.3},
///                 "subject_id": "s1", "override_person_index": null}]}
struct DatasetManifest {
  int version = 1;
  std::string frame_dir = ".";
  std::vector<ManifestEntry> entries;
  std::filesystem::path base_dir;  // directory the manifest was loaded from

  std::filesystem::path frame_path(const ManifestEntry& e) const;
  std::filesystem::path mask_path(const ManifestEntry& e) const;
  std::filesystem::path detections_path(const ManifestEntry& e) const;
};

/// Sample identifier: the frame file name without extension.
std::string frame_id(const ManifestEntry& e);

DatasetManifest manifest_from_json(const nlohmann::json& j, std::filesystem::path base_dir);
nlohmann::json to_json(const DatasetManifest& m);

DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const std::filesystem::path& path, const DatasetManifest& m);

/// Entries without a mask, for fail-fast reporting in BgAug builds.
std::vector<std::size_t> entries_missing_masks(const DatasetManifest& m);

}  // namespace bgaug
