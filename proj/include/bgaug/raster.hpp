// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bgaug/error.hpp"

namespace bgaug {

/// Row-major single-channel image. Width and height are always >= 1.
template <class T>
class Plane {
 public:
  using value_type = T;

  Plane(int width, int height, T fill = T{}) : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  Plane(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw Error(ErrorKind::Argument, "plane buffer size does not match " +
                                           std::to_string(width) + "x" + std::to_string(height));
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  T& at(int x, int y) noexcept { return data_[index(x, y)]; }
  const T& at(int x, int y) const noexcept { return data_[index(x, y)]; }

  std::span<T> row(int y) noexcept {
    return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }
  std::span<const T> row(int y) const noexcept {
    return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }

  std::span<T> pixels() noexcept { return data_; }
  std::span<const T> pixels() const noexcept { return data_; }
  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }

  bool same_shape(int w, int h) const noexcept { return width_ == w && height_ == h; }
  template <class U>
  bool same_shape(const Plane<U>& other) const noexcept {
    return same_shape(other.width(), other.height());
  }

  friend bool operator==(const Plane& a, const Plane& b) = default;

 private:
  static void check_dims(int w, int h) {
    if (w < 1 || h < 1) {
      throw Error(ErrorKind::Argument,
                  "plane dimensions must be >= 1, got " + std::to_string(w) + "x" + std::to_string(h));
    }
  }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<T> data_;
};

/// 8-bit grayscale image.
using Raster = Plane<std::uint8_t>;

/// Working-precision image used inside filter chains.
using FloatPlane = Plane<float>;

/// Interleaved 8-bit RGB image.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // width * height * 3
};

/// Per-pixel foreground opacity in [0,1]; 1 is the subject.
class AlphaMask {
 public:
  AlphaMask(int width, int height, float fill) : plane_(width, height, fill) { validate(); }
  explicit AlphaMask(FloatPlane plane) : plane_(std::move(plane)) { validate(); }

  /// Alpha from an 8-bit prepared mask: alpha = value / 255.
  static AlphaMask from_raster(const Raster& r);

  int width() const noexcept { return plane_.width(); }
  int height() const noexcept { return plane_.height(); }
  float at(int x, int y) const noexcept { return plane_.at(x, y); }
  const FloatPlane& plane() const noexcept { return plane_; }

  /// 8-bit encoding, round(alpha * 255).
  Raster to_raster() const;

  /// 1 - alpha.
  AlphaMask inverted() const;

 private:
  void validate() const;

  FloatPlane plane_;
};

}  // namespace bgaug
