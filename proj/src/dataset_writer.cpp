// SPDX-License-Identifier: Apache-2.0
#include "bgaug/dataset_writer.hpp"

#include <openssl/evp.h>

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "bgaug/image_io.hpp"

namespace bgaug {
namespace fs = std::filesystem;

ArchiveFormat parse_archive_format(std::string_view text) {
  if (text == "png" || text == "png+csv") return ArchiveFormat::PngCsv;
  if (text == "packed") return ArchiveFormat::Packed;
  throw Error(ErrorKind::Config, "unknown format '" + std::string(text) + "' (expected png or packed)");
}

std::string_view to_string(ArchiveFormat format) noexcept {
  return format == ArchiveFormat::Packed ? "packed" : "png+csv";
}

struct Sha256::Impl {
  EVP_MD_CTX* ctx = nullptr;
};

Sha256::Sha256() : impl_(std::make_unique<Impl>()) {
  impl_->ctx = EVP_MD_CTX_new();
  if (impl_->ctx == nullptr || EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::Io, "SHA-256 initialization failed");
  }
}

Sha256::~Sha256() { EVP_MD_CTX_free(impl_->ctx); }

void Sha256::update(std::span<const std::uint8_t> bytes) { EVP_DigestUpdate(impl_->ctx, bytes.data(), bytes.size()); }

void Sha256::update(std::string_view text) { EVP_DigestUpdate(impl_->ctx, text.data(), text.size()); }

std::string Sha256::hex_digest() {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(impl_->ctx, md, &len);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::size_t packed_size(std::size_t count, int width, int height) noexcept {
  return 12 + count * (static_cast<std::size_t>(width) * static_cast<std::size_t>(height) + 12);
}

namespace {

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(const std::uint8_t* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot create " + path.string());
  return out;
}

void checked_write(std::ofstream& out, const fs::path& path, const void* data, std::size_t size) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

void check_sample(const LabeledSample& s, int width, int height) {
  if (!s.image.same_shape(width, height)) {
    throw Error(ErrorKind::Argument, "sample " + s.id + " is " + std::to_string(s.image.width()) + "x" +
                                         std::to_string(s.image.height()) + ", archive expects " +
                                         std::to_string(width) + "x" + std::to_string(height));
  }
}

class PackedWriter final : public DatasetWriter {
 public:
  PackedWriter(const fs::path& out_dir, const std::string& name, std::size_t count, int width, int height)
      : path_(out_dir / (name + ".bga")),
        params_path_(out_dir / (name + ".params.jsonl")),
        out_(open_out(path_)),
        params_(open_out(params_path_)),
        expected_(count),
        width_(width),
        height_(height) {
    if (count > 0xffffffffULL || width > 0xffff || height > 0xffff) {
      throw Error(ErrorKind::Argument, "packed archive limits exceeded");
    }
    std::vector<std::uint8_t> header(kPackedMagic.begin(), kPackedMagic.end());
    put_le(header, count, 4);
    put_le(header, static_cast<std::uint64_t>(width), 2);
    put_le(header, static_cast<std::uint64_t>(height), 2);
    emit(header);
  }

  void write(const LabeledSample& s) override {
    check_sample(s, width_, height_);
    if (written_ == expected_) throw Error(ErrorKind::Argument, "more samples than declared in the header");
    emit(s.image.pixels());
    std::vector<std::uint8_t> label;
    for (double v : {s.label.x, s.label.y, s.label.phi}) {
      put_le(label, std::bit_cast<std::uint32_t>(static_cast<float>(v)), 4);
    }
    emit(label);
    const std::string line = s.params.dump() + "\n";
    checked_write(params_, params_path_, line.data(), line.size());
    ++written_;
  }

  WriteSummary finish() override {
    if (written_ != expected_) {
      throw Error(ErrorKind::Argument, "packed archive declared " + std::to_string(expected_) + " samples, got " +
                                           std::to_string(written_));
    }
    out_.close();
    params_.close();
    if (!out_ || !params_) throw Error(ErrorKind::Io, "closing " + path_.string() + " failed");
    return WriteSummary{written_, sha_.hex_digest(), path_};
  }

 private:
  void emit(std::span<const std::uint8_t> bytes) {
    checked_write(out_, path_, bytes.data(), bytes.size());
    sha_.update(bytes);
  }

  fs::path path_;
  fs::path params_path_;
  std::ofstream out_;
  std::ofstream params_;
  Sha256 sha_;
  std::size_t expected_;
  std::size_t written_ = 0;
  int width_;
  int height_;
};

class PngCsvWriter final : public DatasetWriter {
 public:
  PngCsvWriter(const fs::path& out_dir, const std::string& name, int width, int height)
      : dir_(out_dir / name), width_(width), height_(height) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + dir_.string() + ": " + ec.message());
    labels_ = open_out(dir_ / "labels.csv");
    params_ = open_out(dir_ / "params.jsonl");
    const std::string header = "frame_id,x,y,phi\n";
    checked_write(labels_, dir_ / "labels.csv", header.data(), header.size());
    sha_.update(header);
  }

  void write(const LabeledSample& s) override {
    check_sample(s, width_, height_);
    const auto png = encode_png(s.image);
    write_file_bytes(dir_ / (s.id + ".png"), png);
    sha_.update(s.id);
    sha_.update(png);

    char buf[96];
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g\n", static_cast<double>(static_cast<float>(s.label.x)),
                  static_cast<double>(static_cast<float>(s.label.y)),
                  static_cast<double>(static_cast<float>(s.label.phi)));
    const std::string line = s.id + "," + buf;
    checked_write(labels_, dir_ / "labels.csv", line.data(), line.size());
    sha_.update(line);

    const std::string params = s.params.dump() + "\n";
    checked_write(params_, dir_ / "params.jsonl", params.data(), params.size());
    sha_.update(params);
    ++written_;
  }

  WriteSummary finish() override {
    labels_.close();
    params_.close();
    if (!labels_ || !params_) throw Error(ErrorKind::Io, "closing files in " + dir_.string() + " failed");
    return WriteSummary{written_, sha_.hex_digest(), dir_};
  }

 private:
  fs::path dir_;
  int width_;
  int height_;
  std::ofstream labels_;
  std::ofstream params_;
  Sha256 sha_;
  std::size_t written_ = 0;
};

}  // namespace

std::unique_ptr<DatasetWriter> make_writer(ArchiveFormat format, const fs::path& out_dir, const std::string& name,
                                           std::size_t count, int width, int height) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());
  if (format == ArchiveFormat::Packed) return std::make_unique<PackedWriter>(out_dir, name, count, width, height);
  return std::make_unique<PngCsvWriter>(out_dir, name, width, height);
}

PackedArchive read_packed(const fs::path& path) {
  const auto bytes = read_file_bytes(path);
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kPackedMagic.data(), 4) != 0) {
    throw Error(ErrorKind::Format, path.string() + ": not a BGA1 archive");
  }
  const auto count = static_cast<std::size_t>(get_le(bytes.data() + 4, 4));
  PackedArchive archive;
  archive.width = static_cast<int>(get_le(bytes.data() + 8, 2));
  archive.height = static_cast<int>(get_le(bytes.data() + 10, 2));
  if (bytes.size() != packed_size(count, archive.width, archive.height)) {
    throw Error(ErrorKind::Format, path.string() + ": size does not match header");
  }
  const std::size_t pixels = static_cast<std::size_t>(archive.width) * static_cast<std::size_t>(archive.height);
  const std::uint8_t* p = bytes.data() + 12;
  for (std::size_t i = 0; i < count; ++i) {
    archive.images.emplace_back(archive.width, archive.height, std::vector<std::uint8_t>(p, p + pixels));
    p += pixels;
    std::array<float, 3> label{};
    for (float& v : label) {
      v = std::bit_cast<float>(static_cast<std::uint32_t>(get_le(p, 4)));
      p += 4;
    }
    archive.labels.push_back(label);
  }
  return archive;
}

}  // namespace bgaug
