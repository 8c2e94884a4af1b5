// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bgaug/raster.hpp"
#include "bgaug/rng.hpp"

namespace bgaug {

struct PoolEntry {
  std::string path;  // relative to the pool root for file pools
  int width = 0;
  int height = 0;
};

/// One concrete background draw: which entry and where to crop after
/// cover-scaling it to the target size.
struct BackgroundChoice {
  std::size_t entry = 0;
  int crop_x = 0;
  int crop_y = 0;

  friend bool operator==(const BackgroundChoice&, const BackgroundChoice&) = default;
};

struct CoverSize {
  int width = 0;
  int height = 0;
};

/// Dimensions after scaling (w, h) by max(tw / w, th / h); never smaller
/// than the target.
CoverSize cover_size(int w, int h, int target_w, int target_h);

/// Immutable, ordered repository of replacement backgrounds.
///
/// Decoded grayscale, cover-scaled entries are kept in an internally
/// synchronized LRU cache bounded by a byte budget. The cache never affects
/// outputs, so concurrent sampling is safe as long as every worker owns its
/// own RngStream.
class BackgroundPool {
 public:
  /// Returns the full-size grayscale image for an entry.
  using Loader = std::function<Raster(const PoolEntry&)>;

  static constexpr std::size_t kDefaultCacheBytes = std::size_t{512} << 20;

  BackgroundPool(std::vector<PoolEntry> entries, int target_w, int target_h, Loader loader,
                 std::size_t cache_bytes = kDefaultCacheBytes, std::size_t skipped = 0);
  ~BackgroundPool();
  BackgroundPool(BackgroundPool&&) noexcept;
  BackgroundPool& operator=(BackgroundPool&&) noexcept;

  /// In-memory pool; entry paths are "mem:<i>".
  static BackgroundPool from_images(std::vector<Raster> images, int target_w, int target_h);

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<PoolEntry>& entries() const noexcept { return entries_; }
  int target_width() const noexcept { return target_w_; }
  int target_height() const noexcept { return target_h_; }
  /// Images rejected during indexing (undecodable or smaller than target / 4).
  std::size_t skipped() const noexcept { return skipped_; }
  const std::filesystem::path& root() const noexcept { return root_; }

  /// Draws (entry, crop_x, crop_y) in that order; exactly three draws
  /// unless integer rejection sampling retries.
  BackgroundChoice choose(RngStream& rng) const;

  /// Grayscale, cover-scaled, cropped background of exactly the target size.
  Raster render(const BackgroundChoice& choice) const;

  friend BackgroundPool load_pool(const std::filesystem::path& root_dir, int target_w,
                                  int target_h, std::size_t cache_bytes);

 private:
  std::shared_ptr<const Raster> scaled(std::size_t entry) const;

  struct Cache;

  std::vector<PoolEntry> entries_;
  int target_w_;
  int target_h_;
  Loader loader_;
  std::size_t skipped_;
  std::filesystem::path root_;
  std::unique_ptr<Cache> cache_;
};

/// Recursively indexes decodable images under root_dir in lexicographic
/// relative-path order. Throws ErrorKind::Config when nothing usable is found.
BackgroundPool load_pool(const std::filesystem::path& root_dir, int target_w, int target_h,
                         std::size_t cache_bytes = BackgroundPool::kDefaultCacheBytes);

/// choose() followed by render().
Raster sample_background(const BackgroundPool& pool, RngStream& rng);

}  // namespace bgaug
