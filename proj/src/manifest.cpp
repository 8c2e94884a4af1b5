// SPDX-License-Identifier: Apache-2.0
#include "bgaug/manifest.hpp"

#include <fstream>

#include "bgaug/error.hpp"

namespace bgaug {
namespace fs = std::filesystem;

namespace {

fs::path under(const fs::path& base, const fs::path& p) { return p.is_absolute() ? p : base / p; }

}  // namespace

fs::path DatasetManifest::frame_path(const ManifestEntry& e) const {
  return under(under(base_dir, frame_dir), e.frame);
}

fs::path DatasetManifest::mask_path(const ManifestEntry& e) const {
  if (!e.mask) throw Error(ErrorKind::Config, "entry " + e.frame + " has no mask");
  return under(base_dir, *e.mask);
}

fs::path DatasetManifest::detections_path(const ManifestEntry& e) const {
  if (!e.detections) throw Error(ErrorKind::Config, "entry " + e.frame + " has no detections");
  return under(base_dir, *e.detections);
}

std::string frame_id(const ManifestEntry& e) { return fs::path(e.frame).stem().string(); }

DatasetManifest manifest_from_json(const nlohmann::json& j, fs::path base_dir) {
  DatasetManifest m;
  m.base_dir = std::move(base_dir);
  try {
    m.version = j.value("version", 1);
    if (m.version != 1) throw Error(ErrorKind::Format, "unsupported manifest version " + std::to_string(m.version));
    m.frame_dir = j.value("frame_dir", std::string("."));
    for (const auto& item : j.at("entries")) {
      ManifestEntry e;
      e.frame = item.at("frame").get<std::string>();
      if (item.contains("mask") && !item["mask"].is_null()) e.mask = item["mask"].get<std::string>();
      if (item.contains("detections") && !item["detections"].is_null()) {
        e.detections = item["detections"].get<std::string>();
      }
      const auto& label = item.at("label");
      e.label = RelativePose{label.at("x").get<double>(), label.at("y").get<double>(), label.at("phi").get<double>()};
      e.subject_id = item.value("subject_id", std::string());
      if (item.contains("override_person_index") && !item["override_person_index"].is_null()) {
        e.override_person_index = item["override_person_index"].get<int>();
      }
      m.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("manifest: ") + e.what());
  }
  return m;
}

nlohmann::json to_json(const DatasetManifest& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const ManifestEntry& e : m.entries) {
    nlohmann::json item;
    item["frame"] = e.frame;
    item["mask"] = e.mask ? nlohmann::json(*e.mask) : nlohmann::json(nullptr);
    item["detections"] = e.detections ? nlohmann::json(*e.detections) : nlohmann::json(nullptr);
    item["label"] = {{"x", e.label.x}, {"y", e.label.y}, {"phi", e.label.phi}};
    item["subject_id"] = e.subject_id;
    item["override_person_index"] =
        e.override_person_index ? nlohmann::json(*e.override_person_index) : nlohmann::json(nullptr);
    entries.push_back(std::move(item));
  }
  return nlohmann::json{{"version", m.version}, {"frame_dir", m.frame_dir}, {"entries", std::move(entries)}};
}

DatasetManifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, path.string() + ": " + e.what());
  }
  return manifest_from_json(j, path.parent_path());
}

void save_manifest(const fs::path& path, const DatasetManifest& m) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot create " + path.string());
  out << to_json(m).dump(2) << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

std::vector<std::size_t> entries_missing_masks(const DatasetManifest& m) {
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    if (!m.entries[i].mask) missing.push_back(i);
  }
  return missing;
}

}  // namespace bgaug
