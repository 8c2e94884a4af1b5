// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "bgaug/simd/kernels.hpp"
#include "kernels_impl.hpp"

namespace bgaug::simd::scalar {

void widen(const std::uint8_t* in, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<float>(in[i]);
}

void composite(const std::uint8_t* fg, const std::uint8_t* bg, const float* alpha, float* out,
               std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const float a = alpha[i];
    out[i] = a * static_cast<float>(fg[i]) + (1.0f - a) * static_cast<float>(bg[i]);
  }
}

void scale(float* v, std::size_t n, float gain) {
  for (std::size_t i = 0; i < n; ++i) v[i] = v[i] * gain;
}

void affine(float* v, std::size_t n, float offset, float slope) {
  for (std::size_t i = 0; i < n; ++i) v[i] = offset + v[i] * slope;
}

void gamma(float* v, std::size_t n, float g) {
  for (std::size_t i = 0; i < n; ++i) {
    const float u = std::min(std::max(v[i], 0.0f), 255.0f) / 255.0f;
    v[i] = 255.0f * std::pow(u, g);
  }
}

void add(float* dst, const float* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = dst[i] + src[i];
}

void convolve_row(const float* padded, float* out, std::size_t n, const float* taps,
                  std::size_t ntaps) {
  for (std::size_t x = 0; x < n; ++x) {
    float acc = 0.0f;
    for (std::size_t j = 0; j < ntaps; ++j) acc = acc + taps[j] * padded[x + j];
    out[x] = acc;
  }
}

void convolve_cols(const float* const* rows, float* out, std::size_t n, const float* taps,
                   std::size_t ntaps) {
  for (std::size_t x = 0; x < n; ++x) {
    float acc = 0.0f;
    for (std::size_t j = 0; j < ntaps; ++j) acc = acc + taps[j] * rows[j][x];
    out[x] = acc;
  }
}

void vignette_span(float* v, int x_begin, int x_end, const VignetteRow& row) {
  for (int x = x_begin; x < x_end; ++x) {
    const float dx = static_cast<float>(x) - row.cx;
    const float d2 = dx * dx + row.dy2;
    const float q2 = d2 / row.hd2 / row.ff;
    const float t = 1.0f + q2;
    const float g = 1.0f / (t * t);
    v[x] = v[x] * (row.keep + row.strength * g);
  }
}

void vignette(float* v, int w, int h, float f, float strength) {
  for (int y = 0; y < h; ++y) {
    const VignetteRow row = make_vignette_row(w, h, y, f, strength);
    vignette_span(v + static_cast<std::size_t>(y) * static_cast<std::size_t>(w), 0, w, row);
  }
}

std::uint8_t quantize_one(float v) {
  const float r = std::floor(v + 0.5f);
  return static_cast<std::uint8_t>(std::min(std::max(r, 0.0f), 255.0f));
}

void quantize(const float* v, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = quantize_one(v[i]);
}

}  // namespace bgaug::simd::scalar

namespace bgaug::simd {

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      Isa::Scalar,          "scalar",
      scalar::widen,        scalar::composite,     scalar::scale,
      scalar::affine,       scalar::gamma,         scalar::add,
      scalar::convolve_row, scalar::convolve_cols, scalar::vignette,
      scalar::quantize,
  };
  return table;
}

}  // namespace bgaug::simd
