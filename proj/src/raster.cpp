// SPDX-License-Identifier: Apache-2.0
#include "bgaug/raster.hpp"

#include <cmath>

namespace bgaug {

AlphaMask AlphaMask::from_raster(const Raster& r) {
  FloatPlane plane(r.width(), r.height());
  auto out = plane.pixels();
  auto in = r.pixels();
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = static_cast<float>(in[i]) / 255.0f;
  return AlphaMask(std::move(plane));
}

Raster AlphaMask::to_raster() const {
  Raster r(width(), height());
  auto out = r.pixels();
  auto in = plane_.pixels();
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(std::floor(static_cast<double>(in[i]) * 255.0 + 0.5));
  }
  return r;
}

AlphaMask AlphaMask::inverted() const {
  FloatPlane plane(width(), height());
  auto out = plane.pixels();
  auto in = plane_.pixels();
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = 1.0f - in[i];
  return AlphaMask(std::move(plane));
}

void AlphaMask::validate() const {
  for (float a : plane_.pixels()) {
    if (!(a >= 0.0f && a <= 1.0f)) {
      throw Error(ErrorKind::Argument, "alpha value outside [0,1]: " + std::to_string(a));
    }
  }
}

}  // namespace bgaug
