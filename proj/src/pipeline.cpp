// SPDX-License-Identifier: Apache-2.0
#include "bgaug/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "bgaug/constants.hpp"
#include "bgaug/image_io.hpp"
#include "bgaug/imaging.hpp"
#include "bgaug/mask.hpp"

namespace bgaug {
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kRenderBlock = 512;

void check_frame(const Raster& frame, const fs::path& path) {
  if (!frame.same_shape(constants::kFrameWidth, constants::kFrameHeight)) {
    throw Error(ErrorKind::Format, path.string() + ": frame is " + std::to_string(frame.width()) + "x" +
                                       std::to_string(frame.height()) + ", expected 160x160");
  }
}

/// Decoded frames (and prepared masks) for the entries a build touches.
class FrameStore {
 public:
  FrameStore(const DatasetManifest& manifest, const std::vector<SampleSpec>& specs, bool need_masks)
      : manifest_(manifest), frames_(manifest.entries.size()), masks_(manifest.entries.size()) {
    for (const SampleSpec& s : specs) load(s.entry, need_masks);
  }

  void load(std::size_t entry, bool need_mask) {
    const ManifestEntry& e = manifest_.entries.at(entry);
    if (!frames_[entry]) {
      const fs::path path = manifest_.frame_path(e);
      Raster frame = read_gray(path);
      check_frame(frame, path);
      frames_[entry] = std::move(frame);
    }
    if (need_mask && !masks_[entry]) {
      masks_[entry] = load_prepared_mask(manifest_.mask_path(e), constants::kFrameWidth, constants::kFrameHeight).to_raster();
    }
  }

  const Raster& frame(std::size_t entry) const { return *frames_.at(entry); }
  const std::optional<Raster>& mask(std::size_t entry) const { return masks_.at(entry); }
  const DatasetManifest& manifest() const { return manifest_; }

 private:
  const DatasetManifest& manifest_;
  std::vector<std::optional<Raster>> frames_;
  std::vector<std::optional<Raster>> masks_;  // round(alpha * 255)
};

Raster render_one(const FrameStore& store, const SampleSpec& spec, const BackgroundPool* pool) {
  const auto& mask = store.mask(spec.entry);
  if (spec.params.mode == AugMode::BgAug) {
    if (!mask) throw Error(ErrorKind::Config, "entry " + store.manifest().entries[spec.entry].frame + " has no mask");
    const AlphaMask alpha = AlphaMask::from_raster(*mask);
    return augment_sample(store.frame(spec.entry), &alpha, pool, spec.params);
  }
  return augment_sample(store.frame(spec.entry), nullptr, pool, spec.params);
}

std::string sample_id(const SampleSpec& spec) {
  char buf[64];
  if (spec.index & kValidationIndexBit) {
    std::snprintf(buf, sizeof buf, "val_e%03llu_s%06llu", static_cast<unsigned long long>(spec.epoch),
                  static_cast<unsigned long long>(spec.index & ~kValidationIndexBit));
  } else {
    std::snprintf(buf, sizeof buf, "e%03llu_s%06llu", static_cast<unsigned long long>(spec.epoch),
                  static_cast<unsigned long long>(spec.index));
  }
  return buf;
}

nlohmann::json params_record(const FrameStore& store, const SampleSpec& spec, const std::string& id,
                             const BackgroundPool* pool) {
  nlohmann::json j{{"id", id},
                   {"epoch", spec.epoch},
                   {"sample", spec.index & ~kValidationIndexBit},
                   {"entry", spec.entry},
                   {"frame", frame_id(store.manifest().entries[spec.entry])}};
  if (pool != nullptr && spec.params.background) j["bg_path"] = pool->entries().at(spec.params.background->entry).path;
  j.update(to_json(spec.params));
  return j;
}

void render_with_store(const FrameStore& store, const std::vector<SampleSpec>& specs, const BackgroundPool* pool,
                       int workers, DatasetWriter& writer) {
  const std::size_t threads = static_cast<std::size_t>(std::max(workers, 1));
  std::vector<std::optional<Raster>> block;
  for (std::size_t begin = 0; begin < specs.size(); begin += kRenderBlock) {
    const std::size_t end = std::min(specs.size(), begin + kRenderBlock);
    block.assign(end - begin, std::nullopt);

    std::atomic<std::size_t> next{begin};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      for (std::size_t i = next++; i < end; i = next++) {
        try {
          block[i - begin] = render_one(store, specs[i], pool);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = end;
        }
      }
    };
    if (threads == 1) {
      work();
    } else {
      std::vector<std::jthread> pool_threads;
      for (std::size_t t = 0; t < std::min(threads, end - begin); ++t) pool_threads.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t i = begin; i < end; ++i) {
      const SampleSpec& spec = specs[i];
      const std::string id = sample_id(spec);
      writer.write(LabeledSample{id, std::move(*block[i - begin]), store.manifest().entries[spec.entry].label,
                                 params_record(store, spec, id, pool)});
    }
  }
}

nlohmann::json ranges_json(const AugRanges& r) {
  auto pair = [](const Range& x) { return nlohmann::json::array({x.lo, x.hi}); };
  return nlohmann::json{{"exposure_gain", pair(r.exposure_gain)},
                        {"gamma", pair(r.gamma)},
                        {"dr_lo", pair(r.dr_lo)},
                        {"dr_hi", pair(r.dr_hi)},
                        {"blur_sigma", pair(r.blur_sigma)},
                        {"blur_probability", r.blur_probability},
                        {"noise_sigma", pair(r.noise_sigma)},
                        {"vignette_f", pair(r.vignette_f)},
                        {"vignette_strength", pair(r.vignette_strength)},
                        {"row_offset", {r.row_offset_lo, r.row_offset_hi}}};
}

std::string hex_seed(std::uint64_t seed) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(seed));
  return buf;
}

void require_masks(const DatasetManifest& m) {
  const auto missing = entries_missing_masks(m);
  if (missing.empty()) return;
  std::string listing;
  for (std::size_t i = 0; i < missing.size() && i < 20; ++i) listing += "\n  " + m.entries[missing[i]].frame;
  if (missing.size() > 20) listing += "\n  ... and " + std::to_string(missing.size() - 20) + " more";
  throw Error(ErrorKind::Config,
              std::to_string(missing.size()) + " manifest entries have no mask (BgAug needs one per entry):" + listing);
}

fs::path relocate(const fs::path& p, const fs::path& old_base, const fs::path& new_base) {
  if (p.is_absolute()) return p;
  return fs::proximate(fs::weakly_canonical(old_base / p), fs::weakly_canonical(new_base));
}

void write_json_file(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot create " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

void render_samples(const DatasetManifest& manifest, const std::vector<SampleSpec>& specs, const BackgroundPool* pool,
                    int workers, DatasetWriter& writer) {
  const bool need_masks = std::any_of(specs.begin(), specs.end(),
                                      [](const SampleSpec& s) { return s.params.mode == AugMode::BgAug; });
  const FrameStore store(manifest, specs, need_masks);
  render_with_store(store, specs, pool, workers, writer);
}

nlohmann::json run_augment(const AugmentOptions& options) {
  const EpochPlan& plan = options.plan;
  plan.validate();
  options.ranges.validate();

  const DatasetManifest manifest = load_manifest(options.manifest);
  if (manifest.entries.empty()) throw Error(ErrorKind::Data, "manifest has no entries");
  std::optional<BackgroundPool> pool;
  if (plan.mode == AugMode::BgAug) {
    require_masks(manifest);
    if (!options.pool) throw Error(ErrorKind::Config, "BgAug needs a background pool (--pool or BGAUG_POOL)");
    pool.emplace(load_pool(*options.pool, constants::kFrameWidth, constants::kFrameHeight));
  }
  const BackgroundPool* pool_ptr = pool ? &*pool : nullptr;

  const TrainValSplit split = split_train_val(manifest.entries.size(), plan.split_fraction, plan.seed);
  const bool with_val = options.write_validation && !split.val.empty();

  std::vector<std::vector<SampleSpec>> train_epochs;
  std::vector<std::vector<SampleSpec>> val_epochs;
  std::vector<SampleSpec> all;
  for (int e = 0; e < plan.epochs; ++e) {
    train_epochs.push_back(build_epoch(plan, split.train, static_cast<std::uint64_t>(e), options.ranges, pool_ptr));
    all.insert(all.end(), train_epochs.back().begin(), train_epochs.back().end());
    if (with_val) {
      val_epochs.push_back(build_validation(plan, split.val, static_cast<std::uint64_t>(e), options.ranges, pool_ptr));
      all.insert(all.end(), val_epochs.back().begin(), val_epochs.back().end());
    }
  }
  const FrameStore store(manifest, all, plan.mode == AugMode::BgAug);
  all.clear();

  make_dirs(options.out_dir);
  auto write_set = [&](const std::string& name, const std::vector<std::vector<SampleSpec>>& epochs) {
    std::size_t count = 0;
    for (const auto& e : epochs) count += e.size();
    auto writer = make_writer(options.format, options.out_dir, name, count, constants::kFrameWidth, constants::kCropHeight);
    for (const auto& e : epochs) render_with_store(store, e, pool_ptr, options.workers, *writer);
    const WriteSummary s = writer->finish();
    return nlohmann::json{{"path", fs::relative(s.path, options.out_dir).generic_string()},
                          {"count", s.count},
                          {"sha256", s.sha256}};
  };

  nlohmann::json summary;
  summary["tool"] = "bgaug";
  summary["format_version"] = 1;
  summary["seed"] = hex_seed(plan.seed);
  summary["plan"] = to_json(plan);
  summary["ranges"] = ranges_json(options.ranges);
  summary["format"] = to_string(options.format);
  summary["sample_size"] = {constants::kFrameWidth, constants::kCropHeight};
  summary["split"] = {{"train", split.train.size()}, {"val", split.val.size()}};
  if (pool) summary["pool"] = {{"entries", pool->size()}, {"skipped", pool->skipped()}};
  summary["train"] = write_set("train", train_epochs);
  if (with_val) summary["val"] = write_set("val", val_epochs);
  write_json_file(options.out_dir / "manifest.json", summary);
  return summary;
}

Raster make_preview(const DatasetManifest& manifest, std::size_t entry, const BackgroundPool* pool, AugMode mode,
                    std::uint64_t seed, int n, const AugRanges& ranges) {
  if (n < 1) throw Error(ErrorKind::Argument, "preview needs n >= 1");
  if (entry >= manifest.entries.size()) {
    throw Error(ErrorKind::Argument, "preview entry " + std::to_string(entry) + " out of range");
  }
  const ManifestEntry& e = manifest.entries[entry];
  const fs::path frame_path = manifest.frame_path(e);
  const Raster frame = read_gray(frame_path);
  check_frame(frame, frame_path);
  std::optional<AlphaMask> alpha;
  if (mode == AugMode::BgAug) {
    if (!e.mask) throw Error(ErrorKind::Config, "entry " + e.frame + " has no mask");
    alpha = load_prepared_mask(manifest.mask_path(e), frame.width(), frame.height());
  }

  const int tile_w = constants::kFrameWidth;
  const int tile_h = constants::kCropHeight;
  Raster grid(tile_w * (n + 1), tile_h);
  auto blit = [&](const Raster& tile, int slot) {
    for (int y = 0; y < tile_h; ++y) {
      std::copy(tile.row(y).begin(), tile.row(y).end(), grid.row(y).begin() + slot * tile_w);
    }
  };
  blit(pitch_crop(frame, constants::kEvalRowOffset), 0);
  for (int i = 0; i < n; ++i) {
    const AugParams p = sample_aug_params(mode, ranges, pool, seed, 0, static_cast<std::uint64_t>(i));
    blit(augment_sample(frame, alpha ? &*alpha : nullptr, pool, p), i + 1);
  }
  return grid;
}

nlohmann::json run_center_crop(const fs::path& manifest_path, const fs::path& out_dir) {
  const DatasetManifest manifest = load_manifest(manifest_path);
  make_dirs(out_dir);
  std::vector<LabeledFrame> labels;
  for (const ManifestEntry& e : manifest.entries) {
    const fs::path path = manifest.frame_path(e);
    const Raster frame = read_gray(path);
    check_frame(frame, path);
    const std::string id = frame_id(e);
    write_png(out_dir / (id + ".png"), pitch_crop(frame, constants::kEvalRowOffset));
    labels.push_back({id, e.label});
  }
  write_labels_csv(out_dir / "labels.csv", labels);
  return nlohmann::json{{"count", labels.size()},
                        {"rows", {constants::kEvalRowOffset, constants::kEvalRowOffset + constants::kCropHeight}},
                        {"out_dir", out_dir.string()}};
}

nlohmann::json run_mask_prep(const MaskPrepOptions& options) {
  if (options.sigma < 0.0) throw Error(ErrorKind::Config, "mask sigma must be >= 0");
  const DatasetManifest in = load_manifest(options.manifest);
  const fs::path mask_dir = options.out_dir / "masks";
  make_dirs(mask_dir);

  DatasetManifest out = in;
  out.base_dir = options.out_dir;
  out.frame_dir = relocate(in.frame_dir, in.base_dir, options.out_dir).generic_string();

  std::size_t prepared = 0, no_person = 0, no_detections = 0;
  for (std::size_t i = 0; i < in.entries.size(); ++i) {
    const ManifestEntry& src = in.entries[i];
    ManifestEntry& dst = out.entries[i];
    if (src.detections) dst.detections = relocate(*src.detections, in.base_dir, options.out_dir).generic_string();
    if (src.mask) dst.mask = relocate(*src.mask, in.base_dir, options.out_dir).generic_string();
    if (!src.detections) {
      ++no_detections;
      continue;
    }
    const fs::path frame_path = in.frame_path(src);
    const auto size = probe_image(frame_path);
    if (!size) throw Error(ErrorKind::Format, frame_path.string() + ": unreadable frame");
    const auto detections = read_detections(in.detections_path(src), size->width, size->height);

    std::optional<std::size_t> chosen;
    if (src.override_person_index) {
      if (*src.override_person_index < 0 || static_cast<std::size_t>(*src.override_person_index) >= detections.size()) {
        throw Error(ErrorKind::Data, src.frame + ": override_person_index out of range");
      }
      chosen = static_cast<std::size_t>(*src.override_person_index);
    } else {
      chosen = primary_person_index(detections);
    }
    if (!chosen) {
      ++no_person;
      continue;
    }
    const Detection& det = detections[*chosen];
    if (det.mask_ref.empty()) throw Error(ErrorKind::Data, src.frame + ": selected detection has no mask");
    const AlphaMask alpha = soften_mask(decode_mask(det.mask_ref, size->width, size->height), options.sigma);

    const std::string id = frame_id(src);
    write_png(mask_dir / (id + ".png"), alpha.to_raster());
    write_json_file(mask_dir / (id + ".det.json"),
                    nlohmann::json{{"frame", src.frame},
                                   {"index", *chosen},
                                   {"class", det.class_label},
                                   {"score", det.score},
                                   {"bbox", {det.bbox.x0, det.bbox.y0, det.bbox.w, det.bbox.h}},
                                   {"mask", det.mask_ref.generic_string()},
                                   {"sigma", options.sigma}});
    dst.mask = "masks/" + id + ".png";
    ++prepared;
  }
  save_manifest(options.out_dir / "manifest.json", out);
  return nlohmann::json{{"entries", in.entries.size()},
                        {"prepared", prepared},
                        {"no_person", no_person},
                        {"no_detections", no_detections},
                        {"sigma", options.sigma},
                        {"manifest", (options.out_dir / "manifest.json").string()}};
}

nlohmann::json pool_stats(const BackgroundPool& pool) {
  int min_w = std::numeric_limits<int>::max(), min_h = std::numeric_limits<int>::max();
  int max_w = 0, max_h = 0;
  for (const PoolEntry& e : pool.entries()) {
    min_w = std::min(min_w, e.width);
    min_h = std::min(min_h, e.height);
    max_w = std::max(max_w, e.width);
    max_h = std::max(max_h, e.height);
  }
  return nlohmann::json{{"entries", pool.size()},  {"skipped", pool.skipped()}, {"min_width", min_w},
                        {"min_height", min_h},     {"max_width", max_w},        {"max_height", max_h},
                        {"target", {pool.target_width(), pool.target_height()}}};
}

}  // namespace bgaug
