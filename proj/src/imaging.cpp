// SPDX-License-Identifier: Apache-2.0
#include "bgaug/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bgaug/simd/kernels.hpp"

namespace bgaug {

Raster to_grayscale(const RgbImage& rgb) {
  Raster out(rgb.width, rgb.height);
  if (rgb.rgb.size() != out.size() * 3) {
    throw Error(ErrorKind::Argument, "RGB buffer size does not match dimensions");
  }
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double luma = 0.299 * rgb.rgb[3 * i] + 0.587 * rgb.rgb[3 * i + 1] + 0.114 * rgb.rgb[3 * i + 2];
    px[i] = static_cast<std::uint8_t>(std::clamp(std::floor(luma + 0.5), 0.0, 255.0));
  }
  return out;
}

namespace {

struct Tap {
  int i0;
  int i1;
  double t;  // weight of i1
};

std::vector<Tap> bilinear_taps(int src, int dst) {
  std::vector<Tap> taps(static_cast<std::size_t>(dst));
  const double ratio = static_cast<double>(src) / dst;
  for (int o = 0; o < dst; ++o) {
    const double s = std::clamp((o + 0.5) * ratio - 0.5, 0.0, static_cast<double>(src - 1));
    const int i0 = static_cast<int>(std::floor(s));
    const int i1 = std::min(i0 + 1, src - 1);
    taps[static_cast<std::size_t>(o)] = Tap{i0, i1, s - i0};
  }
  return taps;
}

}  // namespace

Raster resize_bilinear(const Raster& img, int new_w, int new_h) {
  if (new_w < 1 || new_h < 1) {
    throw Error(ErrorKind::Argument, "resize target must be at least 1x1");
  }
  if (img.same_shape(new_w, new_h)) return img;

  const auto xs = bilinear_taps(img.width(), new_w);
  const auto ys = bilinear_taps(img.height(), new_h);
  Raster out(new_w, new_h);
  for (int y = 0; y < new_h; ++y) {
    const Tap& ty = ys[static_cast<std::size_t>(y)];
    const auto r0 = img.row(ty.i0);
    const auto r1 = img.row(ty.i1);
    auto dst = out.row(y);
    for (int x = 0; x < new_w; ++x) {
      const Tap& tx = xs[static_cast<std::size_t>(x)];
      const double top = r0[tx.i0] + tx.t * (r0[tx.i1] - r0[tx.i0]);
      const double bottom = r1[tx.i0] + tx.t * (r1[tx.i1] - r1[tx.i0]);
      const double v = top + ty.t * (bottom - top);
      dst[x] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
    }
  }
  return out;
}

namespace {

template <class T>
Plane<T> crop_plane(const Plane<T>& img, int x0, int y0, int w, int h) {
  if (x0 < 0 || y0 < 0 || w < 1 || h < 1 || x0 + w > img.width() || y0 + h > img.height()) {
    throw Error(ErrorKind::Bounds, "crop rectangle (" + std::to_string(x0) + "," + std::to_string(y0) +
                                       "," + std::to_string(w) + "," + std::to_string(h) +
                                       ") outside " + std::to_string(img.width()) + "x" +
                                       std::to_string(img.height()) + " image");
  }
  Plane<T> out(w, h);
  for (int y = 0; y < h; ++y) {
    const auto src = img.row(y0 + y).subspan(static_cast<std::size_t>(x0), static_cast<std::size_t>(w));
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

}  // namespace

Raster crop(const Raster& img, int x0, int y0, int w, int h) { return crop_plane(img, x0, y0, w, h); }

FloatPlane crop(const FloatPlane& img, int x0, int y0, int w, int h) {
  return crop_plane(img, x0, y0, w, h);
}

std::vector<float> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::Argument, "gaussian kernel needs sigma > 0");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double v = std::exp(-static_cast<double>(k) * k / (2.0 * sigma * sigma));
    w[static_cast<std::size_t>(k + radius)] = v;
    sum += v;
  }
  std::vector<float> taps(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) taps[i] = static_cast<float>(w[i] / sum);
  return taps;
}

FloatPlane gaussian_blur(const FloatPlane& img, double sigma) {
  if (sigma < 0.0 || std::isnan(sigma)) {
    throw Error(ErrorKind::Argument, "blur sigma must be >= 0");
  }
  if (sigma == 0.0) return img;

  const auto taps = gaussian_kernel(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  const int w = img.width();
  const int h = img.height();
  const auto& k = simd::active_kernels();

  FloatPlane horizontal(w, h);
  std::vector<float> padded(static_cast<std::size_t>(w + 2 * radius));
  for (int y = 0; y < h; ++y) {
    const auto src = img.row(y);
    for (int i = 0; i < w + 2 * radius; ++i) {
      padded[static_cast<std::size_t>(i)] = src[static_cast<std::size_t>(std::clamp(i - radius, 0, w - 1))];
    }
    k.convolve_row(padded.data(), horizontal.row(y).data(), static_cast<std::size_t>(w), taps.data(),
                   taps.size());
  }

  FloatPlane out(w, h);
  std::vector<const float*> rows(taps.size());
  for (int y = 0; y < h; ++y) {
    for (int j = 0; j < static_cast<int>(taps.size()); ++j) {
      rows[static_cast<std::size_t>(j)] = horizontal.row(std::clamp(y + j - radius, 0, h - 1)).data();
    }
    k.convolve_cols(rows.data(), out.row(y).data(), static_cast<std::size_t>(w), taps.data(), taps.size());
  }
  return out;
}

FloatPlane to_float(const Raster& img) {
  FloatPlane out(img.width(), img.height());
  simd::active_kernels().widen(img.data(), out.data(), img.size());
  return out;
}

Raster quantize(const FloatPlane& img) {
  Raster out(img.width(), img.height());
  simd::active_kernels().quantize(img.data(), out.data(), img.size());
  return out;
}

}  // namespace bgaug
