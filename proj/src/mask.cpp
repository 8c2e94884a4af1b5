// SPDX-License-Identifier: Apache-2.0
#include "bgaug/mask.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "bgaug/constants.hpp"
#include "bgaug/image_io.hpp"
#include "bgaug/imaging.hpp"

namespace bgaug {
namespace fs = std::filesystem;

std::optional<std::size_t> primary_person_index(const std::vector<Detection>& detections) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const Detection& d = detections[i];
    if (d.class_label != "person") continue;
    if (!best) {
      best = i;
      continue;
    }
    const Detection& b = detections[*best];
    if (d.bbox.area() > b.bbox.area() || (d.bbox.area() == b.bbox.area() && d.score > b.score)) {
      best = i;
    }
  }
  return best;
}

std::optional<Detection> select_primary_person(const std::vector<Detection>& detections) {
  if (auto i = primary_person_index(detections)) return detections[*i];
  return std::nullopt;
}

std::vector<Detection> read_detections(const fs::path& path, int frame_w, int frame_h) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open detections " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, path.string() + ": " + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorKind::Format, path.string() + ": detections must be a JSON array");

  std::vector<Detection> out;
  out.reserve(doc.size());
  for (const auto& item : doc) {
    try {
      Detection d;
      d.class_label = item.at("class").get<std::string>();
      d.score = item.at("score").get<double>();
      const auto& box = item.at("bbox");
      if (!box.is_array() || box.size() != 4) throw Error(ErrorKind::Format, "bbox must be [x0,y0,w,h]");
      d.bbox = BoundingBox{box[0].get<int>(), box[1].get<int>(), box[2].get<int>(), box[3].get<int>()};
      if (item.contains("mask") && !item["mask"].is_null()) {
        fs::path ref = item["mask"].get<std::string>();
        d.mask_ref = ref.is_absolute() ? ref : path.parent_path() / ref;
      }
      if (d.score < 0.0 || d.score > 1.0) throw Error(ErrorKind::Format, "score outside [0,1]");
      if (d.bbox.w <= 0 || d.bbox.h <= 0 || d.bbox.x0 < 0 || d.bbox.y0 < 0) {
        throw Error(ErrorKind::Format, "degenerate bbox");
      }
      if (frame_w > 0 && frame_h > 0 &&
          (d.bbox.x0 + d.bbox.w > frame_w || d.bbox.y0 + d.bbox.h > frame_h)) {
        throw Error(ErrorKind::Format, "bbox outside frame");
      }
      out.push_back(std::move(d));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Format, path.string() + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorKind::Format, path.string() + ": " + e.what());
    }
  }
  return out;
}

AlphaMask binarize_mask(const Raster& mask) {
  FloatPlane plane(mask.width(), mask.height());
  auto out = plane.pixels();
  auto in = mask.pixels();
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] >= constants::kMaskThreshold ? 1.0f : 0.0f;
  return AlphaMask(std::move(plane));
}

namespace {

Raster read_mask_raster(const fs::path& path, int frame_w, int frame_h) {
  if (!fs::exists(path)) throw Error(ErrorKind::Io, "mask not found: " + path.string());
  Raster r = read_gray(path);
  if (!r.same_shape(frame_w, frame_h)) {
    throw Error(ErrorKind::Format, path.string() + ": mask is " + std::to_string(r.width()) + "x" +
                                       std::to_string(r.height()) + ", frame is " +
                                       std::to_string(frame_w) + "x" + std::to_string(frame_h));
  }
  return r;
}

}  // namespace

AlphaMask decode_mask(const fs::path& mask_ref, int frame_w, int frame_h) {
  return binarize_mask(read_mask_raster(mask_ref, frame_w, frame_h));
}

AlphaMask soften_mask(const AlphaMask& mask, double sigma) {
  if (sigma < 0.0 || std::isnan(sigma)) throw Error(ErrorKind::Argument, "mask sigma must be >= 0");
  if (sigma == 0.0) return mask;
  FloatPlane blurred = gaussian_blur(mask.plane(), sigma);
  for (float& a : blurred.pixels()) a = std::clamp(a, 0.0f, 1.0f);
  return AlphaMask(std::move(blurred));
}

AlphaMask load_prepared_mask(const fs::path& path, int frame_w, int frame_h) {
  return AlphaMask::from_raster(read_mask_raster(path, frame_w, frame_h));
}

}  // namespace bgaug
