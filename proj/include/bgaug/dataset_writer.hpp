// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bgaug/pose.hpp"
#include "bgaug/raster.hpp"

namespace bgaug {

enum class ArchiveFormat { PngCsv, Packed };

ArchiveFormat parse_archive_format(std::string_view text);
std::string_view to_string(ArchiveFormat format) noexcept;

/// Incremental SHA-256.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(std::span<const std::uint8_t> bytes);
  void update(std::string_view text);
  /// Lowercase hex digest. The object cannot be updated afterwards.
  std::string hex_digest();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct LabeledSample {
  std::string id;
  Raster image;
  RelativePose label;
  nlohmann::json params;  // one params.jsonl line
};

struct WriteSummary {
  std::size_t count = 0;
  std::string sha256;
  std::filesystem::path path;
};

/// Packed archive layout (little endian):
///   "BGA1", u32 count, u16 width, u16 height,
///   then per sample width*height bytes followed by f32 x, y, phi.
inline constexpr std::array<char, 4> kPackedMagic{'B', 'G', 'A', '1'};

std::size_t packed_size(std::size_t count, int width, int height) noexcept;

/// Streams samples to disk in call order.
class DatasetWriter {
 public:
  virtual ~DatasetWriter() = default;
  virtual void write(const LabeledSample& sample) = 0;
  virtual WriteSummary finish() = 0;
};

/// Packed: <out_dir>/<name>.bga plus <name>.params.jsonl. The sample count
/// is fixed up front and checked at finish().
/// PngCsv: <out_dir>/<name>/ with one PNG per sample, labels.csv and
/// params.jsonl.
std::unique_ptr<DatasetWriter> make_writer(ArchiveFormat format, const std::filesystem::path& out_dir,
                                           const std::string& name, std::size_t count, int width,
                                           int height);

struct PackedArchive {
  int width = 0;
  int height = 0;
  std::vector<Raster> images;
  std::vector<std::array<float, 3>> labels;
};

PackedArchive read_packed(const std::filesystem::path& path);

}  // namespace bgaug
