// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "bgaug/raster.hpp"

namespace bgaug {

/// A decoded 8-bit image with 1 (gray) or 3 (RGB) interleaved channels.
struct DecodedImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> data;
};

struct ImageSize {
  int width = 0;
  int height = 0;
};

/// Decodes PNG, JPEG or binary PGM (P5, maxval 255), sniffed from the file
/// signature. Alpha channels are dropped.
DecodedImage read_image(const std::filesystem::path& path);

/// Reads any supported image and converts it to 8-bit grayscale.
Raster read_gray(const std::filesystem::path& path);

/// Reads only the header. Returns nullopt for files that are not a
/// supported image format.
std::optional<ImageSize> probe_image(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const Raster& img);
std::vector<std::uint8_t> encode_pgm(const Raster& img);

void write_png(const std::filesystem::path& path, const Raster& img);
void write_pgm(const std::filesystem::path& path, const Raster& img);
void write_rgb_png(const std::filesystem::path& path, const RgbImage& img);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace bgaug
