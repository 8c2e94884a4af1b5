// SPDX-License-Identifier: Apache-2.0
#include "bgaug/background.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <list>
#include <mutex>
#include <unordered_map>

#include "bgaug/image_io.hpp"
#include "bgaug/imaging.hpp"

namespace bgaug {
namespace fs = std::filesystem;

CoverSize cover_size(int w, int h, int target_w, int target_h) {
  const double s = std::max(static_cast<double>(target_w) / w, static_cast<double>(target_h) / h);
  const int sw = std::max(target_w, static_cast<int>(std::lround(w * s)));
  const int sh = std::max(target_h, static_cast<int>(std::lround(h * s)));
  return CoverSize{sw, sh};
}

// LRU of cover-scaled grayscale entries, bounded by pixel bytes.
struct BackgroundPool::Cache {
  std::size_t budget;
  std::size_t used = 0;
  std::mutex mutex;
  std::list<std::size_t> order;  // front = most recent
  struct Slot {
    std::shared_ptr<const Raster> image;
    std::list<std::size_t>::iterator pos;
  };
  std::unordered_map<std::size_t, Slot> slots;

  explicit Cache(std::size_t bytes) : budget(bytes) {}

  std::shared_ptr<const Raster> find(std::size_t key) {
    std::lock_guard lock(mutex);
    auto it = slots.find(key);
    if (it == slots.end()) return nullptr;
    order.splice(order.begin(), order, it->second.pos);
    return it->second.image;
  }

  void insert(std::size_t key, std::shared_ptr<const Raster> image) {
    const std::size_t bytes = image->size();
    if (bytes > budget) return;
    std::lock_guard lock(mutex);
    if (slots.contains(key)) return;
    while (used + bytes > budget && !order.empty()) {
      const std::size_t victim = order.back();
      order.pop_back();
      used -= slots[victim].image->size();
      slots.erase(victim);
    }
    order.push_front(key);
    slots.emplace(key, Slot{std::move(image), order.begin()});
    used += bytes;
  }
};

BackgroundPool::BackgroundPool(std::vector<PoolEntry> entries, int target_w, int target_h, Loader loader,
                               std::size_t cache_bytes, std::size_t skipped)
    : entries_(std::move(entries)),
      target_w_(target_w),
      target_h_(target_h),
      loader_(std::move(loader)),
      skipped_(skipped),
      cache_(std::make_unique<Cache>(cache_bytes)) {
  if (target_w < 1 || target_h < 1) throw Error(ErrorKind::Argument, "pool target size must be >= 1");
  for (const PoolEntry& e : entries_) {
    if (e.width < 1 || e.height < 1) throw Error(ErrorKind::Argument, "pool entry with empty size: " + e.path);
  }
}

BackgroundPool::~BackgroundPool() = default;
BackgroundPool::BackgroundPool(BackgroundPool&&) noexcept = default;
BackgroundPool& BackgroundPool::operator=(BackgroundPool&&) noexcept = default;

BackgroundPool BackgroundPool::from_images(std::vector<Raster> images, int target_w, int target_h) {
  std::vector<PoolEntry> entries;
  for (std::size_t i = 0; i < images.size(); ++i) {
    entries.push_back({"mem:" + std::to_string(i), images[i].width(), images[i].height()});
  }
  auto shared = std::make_shared<std::vector<Raster>>(std::move(images));
  Loader loader = [shared](const PoolEntry& e) {
    return (*shared)[std::stoul(e.path.substr(4))];
  };
  return BackgroundPool(std::move(entries), target_w, target_h, std::move(loader));
}

BackgroundChoice BackgroundPool::choose(RngStream& rng) const {
  if (entries_.empty()) throw Error(ErrorKind::Config, "background pool is empty");
  BackgroundChoice c;
  c.entry = static_cast<std::size_t>(draw_uniform_int(rng, 0, static_cast<std::int64_t>(entries_.size()) - 1));
  const PoolEntry& e = entries_[c.entry];
  const CoverSize cover = cover_size(e.width, e.height, target_w_, target_h_);
  c.crop_x = static_cast<int>(draw_uniform_int(rng, 0, cover.width - target_w_));
  c.crop_y = static_cast<int>(draw_uniform_int(rng, 0, cover.height - target_h_));
  return c;
}

std::shared_ptr<const Raster> BackgroundPool::scaled(std::size_t entry) const {
  if (auto hit = cache_->find(entry)) return hit;
  const PoolEntry& e = entries_[entry];
  Raster gray = loader_(e);
  if (!gray.same_shape(e.width, e.height)) {
    throw Error(ErrorKind::Format, "background " + e.path + " changed size since indexing");
  }
  const CoverSize cover = cover_size(e.width, e.height, target_w_, target_h_);
  auto image = std::make_shared<const Raster>(resize_bilinear(gray, cover.width, cover.height));
  cache_->insert(entry, image);
  return image;
}

Raster BackgroundPool::render(const BackgroundChoice& choice) const {
  if (choice.entry >= entries_.size()) {
    throw Error(ErrorKind::Argument, "background entry " + std::to_string(choice.entry) + " out of range");
  }
  const auto image = scaled(choice.entry);
  return crop(*image, choice.crop_x, choice.crop_y, target_w_, target_h_);
}

namespace {

bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".pgm";
}

}  // namespace

BackgroundPool load_pool(const fs::path& root_dir, int target_w, int target_h, std::size_t cache_bytes) {
  std::error_code ec;
  if (!fs::is_directory(root_dir, ec)) {
    throw Error(ErrorKind::Config, "background pool directory not found: " + root_dir.string());
  }
  std::vector<PoolEntry> entries;
  std::size_t skipped = 0;
  for (auto it = fs::recursive_directory_iterator(root_dir, fs::directory_options::follow_directory_symlink, ec);
       !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (!it->is_regular_file()) continue;
    const auto size = probe_image(it->path());
    if (!size) {
      if (has_image_extension(it->path())) ++skipped;
      continue;
    }
    if (size->width * 4 < target_w || size->height * 4 < target_h) {
      ++skipped;
      continue;
    }
    entries.push_back({fs::relative(it->path(), root_dir).generic_string(), size->width, size->height});
  }
  if (ec) throw Error(ErrorKind::Io, "cannot scan " + root_dir.string() + ": " + ec.message());
  if (entries.empty()) {
    throw Error(ErrorKind::Config, "no usable background images under " + root_dir.string() + " (" +
                                       std::to_string(skipped) + " skipped)");
  }
  std::sort(entries.begin(), entries.end(), [](const PoolEntry& a, const PoolEntry& b) { return a.path < b.path; });

  BackgroundPool::Loader loader = [root = root_dir](const PoolEntry& e) { return read_gray(root / e.path); };
  BackgroundPool pool(std::move(entries), target_w, target_h, std::move(loader), cache_bytes, skipped);
  pool.root_ = root_dir;
  return pool;
}

Raster sample_background(const BackgroundPool& pool, RngStream& rng) { return pool.render(pool.choose(rng)); }

}  // namespace bgaug
