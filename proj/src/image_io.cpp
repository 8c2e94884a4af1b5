// SPDX-License-Identifier: Apache-2.0
#include "bgaug/image_io.hpp"

#include <png.h>

#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

// jpeglib.h needs size_t and FILE declared first.
#include <jpeglib.h>

#include "bgaug/imaging.hpp"

namespace bgaug {
namespace fs = std::filesystem;

namespace {

enum class Codec { Png, Jpeg, Pgm, Unknown };

Codec sniff(std::span<const std::uint8_t> b) {
  static constexpr std::uint8_t kPng[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (b.size() >= 8 && std::memcmp(b.data(), kPng, 8) == 0) return Codec::Png;
  if (b.size() >= 3 && b[0] == 0xff && b[1] == 0xd8 && b[2] == 0xff) return Codec::Jpeg;
  if (b.size() >= 2 && b[0] == 'P' && b[1] == '5') return Codec::Pgm;
  return Codec::Unknown;
}

[[noreturn]] void format_error(const fs::path& path, const std::string& what) {
  throw Error(ErrorKind::Format, path.string() + ": " + what);
}

DecodedImage decode_png(std::span<const std::uint8_t> bytes, const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    format_error(path, std::string("PNG decode failed: ") + image.message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  const bool alpha = (image.format & PNG_FORMAT_FLAG_ALPHA) != 0;
  image.format = color ? (alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB) : (alpha ? PNG_FORMAT_GA : PNG_FORMAT_GRAY);
  const int in_channels = static_cast<int>(PNG_IMAGE_PIXEL_CHANNELS(image.format));
  std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, raw.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    format_error(path, "PNG decode failed: " + msg);
  }

  DecodedImage out;
  out.width = static_cast<int>(image.width);
  out.height = static_cast<int>(image.height);
  out.channels = color ? 3 : 1;
  if (!alpha) {
    out.data = std::move(raw);
    return out;
  }
  const std::size_t n = static_cast<std::size_t>(out.width) * static_cast<std::size_t>(out.height);
  out.data.resize(n * static_cast<std::size_t>(out.channels));
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < out.channels; ++c) {
      out.data[i * out.channels + c] = raw[i * in_channels + c];
    }
  }
  return out;
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// Plain C-style state only between setjmp and longjmp.
bool decode_jpeg_raw(const std::uint8_t* data, std::size_t size, bool header_only, DecodedImage* out,
                     char* message) {
  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  err.message[0] = '\0';
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    std::strncpy(message, err.message, JMSG_LENGTH_MAX);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, data, static_cast<unsigned long>(size));
  jpeg_read_header(&cinfo, TRUE);
  out->width = static_cast<int>(cinfo.image_width);
  out->height = static_cast<int>(cinfo.image_height);
  if (!header_only) {
    cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);
    out->channels = static_cast<int>(cinfo.output_components);
    const std::size_t stride = static_cast<std::size_t>(cinfo.output_width) * out->channels;
    out->data.resize(stride * cinfo.output_height);
    while (cinfo.output_scanline < cinfo.output_height) {
      JSAMPROW row = out->data.data() + stride * cinfo.output_scanline;
      jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
  }
  jpeg_destroy_decompress(&cinfo);
  return true;
}

DecodedImage decode_jpeg(std::span<const std::uint8_t> bytes, const fs::path& path) {
  DecodedImage out;
  char message[JMSG_LENGTH_MAX] = {};
  if (!decode_jpeg_raw(bytes.data(), bytes.size(), false, &out, message)) {
    format_error(path, std::string("JPEG decode failed: ") + message);
  }
  return out;
}

// Parses the P5 header; returns the payload offset or 0 on failure.
std::size_t parse_pgm_header(std::span<const std::uint8_t> b, int& w, int& h, int& maxval) {
  std::size_t pos = 2;
  int fields[3] = {0, 0, 0};
  for (int f = 0; f < 3; ++f) {
    while (pos < b.size()) {
      if (b[pos] == '#') {
        while (pos < b.size() && b[pos] != '\n') ++pos;
      } else if (std::isspace(b[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    if (pos >= b.size() || !std::isdigit(b[pos])) return 0;
    long v = 0;
    while (pos < b.size() && std::isdigit(b[pos])) {
      v = v * 10 + (b[pos] - '0');
      if (v > (1L << 30)) return 0;
      ++pos;
    }
    fields[f] = static_cast<int>(v);
  }
  if (pos >= b.size() || !std::isspace(b[pos])) return 0;
  w = fields[0];
  h = fields[1];
  maxval = fields[2];
  return pos + 1;
}

DecodedImage decode_pgm(std::span<const std::uint8_t> bytes, const fs::path& path) {
  int w = 0, h = 0, maxval = 0;
  const std::size_t offset = parse_pgm_header(bytes, w, h, maxval);
  if (offset == 0 || w < 1 || h < 1) format_error(path, "malformed PGM header");
  if (maxval != 255) format_error(path, "only 8-bit PGM (maxval 255) is supported");
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (bytes.size() - offset < n) format_error(path, "truncated PGM payload");
  DecodedImage out;
  out.width = w;
  out.height = h;
  out.channels = 1;
  out.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                  bytes.begin() + static_cast<std::ptrdiff_t>(offset + n));
  return out;
}

std::uint32_t read_be32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

}  // namespace

std::vector<std::uint8_t> read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::Io, "read failed: " + path.string());
  return bytes;
}

void write_file_bytes(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

DecodedImage read_image(const fs::path& path) {
  const auto bytes = read_file_bytes(path);
  switch (sniff(bytes)) {
    case Codec::Png:
      return decode_png(bytes, path);
    case Codec::Jpeg:
      return decode_jpeg(bytes, path);
    case Codec::Pgm:
      return decode_pgm(bytes, path);
    case Codec::Unknown:
      break;
  }
  format_error(path, "unsupported image format");
}

Raster read_gray(const fs::path& path) {
  DecodedImage img = read_image(path);
  if (img.channels == 1) return Raster(img.width, img.height, std::move(img.data));
  return to_grayscale(RgbImage{img.width, img.height, std::move(img.data)});
}

std::optional<ImageSize> probe_image(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::vector<std::uint8_t> head(64);
  in.read(reinterpret_cast<char*>(head.data()), static_cast<std::streamsize>(head.size()));
  head.resize(static_cast<std::size_t>(in.gcount()));
  switch (sniff(head)) {
    case Codec::Png: {
      // IHDR is always the first chunk.
      if (head.size() < 24 || std::memcmp(head.data() + 12, "IHDR", 4) != 0) return std::nullopt;
      const auto w = read_be32(head.data() + 16);
      const auto h = read_be32(head.data() + 20);
      if (w == 0 || h == 0 || w > (1u << 30) || h > (1u << 30)) return std::nullopt;
      return ImageSize{static_cast<int>(w), static_cast<int>(h)};
    }
    case Codec::Jpeg: {
      const auto bytes = read_file_bytes(path);
      DecodedImage out;
      char message[JMSG_LENGTH_MAX] = {};
      if (!decode_jpeg_raw(bytes.data(), bytes.size(), true, &out, message)) return std::nullopt;
      return ImageSize{out.width, out.height};
    }
    case Codec::Pgm: {
      int w = 0, h = 0, maxval = 0;
      if (parse_pgm_header(head, w, h, maxval) == 0 || maxval != 255 || w < 1 || h < 1) return std::nullopt;
      return ImageSize{w, h};
    }
    case Codec::Unknown:
      break;
  }
  return std::nullopt;
}

namespace {

std::vector<std::uint8_t> encode_png_raw(const std::uint8_t* data, int w, int h, bool color) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, data, 0, nullptr)) {
    throw Error(ErrorKind::Io, std::string("PNG encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, data, 0, nullptr)) {
    throw Error(ErrorKind::Io, std::string("PNG encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const Raster& img) {
  return encode_png_raw(img.data(), img.width(), img.height(), false);
}

std::vector<std::uint8_t> encode_pgm(const Raster& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

void write_png(const fs::path& path, const Raster& img) { write_file_bytes(path, encode_png(img)); }

void write_pgm(const fs::path& path, const Raster& img) { write_file_bytes(path, encode_pgm(img)); }

void write_rgb_png(const fs::path& path, const RgbImage& img) {
  if (img.rgb.size() != static_cast<std::size_t>(img.width) * img.height * 3) {
    throw Error(ErrorKind::Argument, "RGB buffer size does not match dimensions");
  }
  write_file_bytes(path, encode_png_raw(img.rgb.data(), img.width, img.height, true));
}

}  // namespace bgaug
