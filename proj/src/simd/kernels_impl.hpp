// SPDX-License-Identifier: Apache-2.0
#pragma once

// Internal to the kernel translation units.

#include <cstddef>
#include <cstdint>

#include "bgaug/simd/kernels.hpp"

namespace bgaug::simd {

/// Per-row constants of the vignette kernel, computed identically by every ISA.
struct VignetteRow {
  float cx;
  float dy2;
  float hd2;
  float ff;
  float keep;
  float strength;
};

inline VignetteRow make_vignette_row(int w, int h, int y, float f, float strength) {
  const float cx = static_cast<float>(w - 1) * 0.5f;
  const float cy = static_cast<float>(h - 1) * 0.5f;
  const float dy = static_cast<float>(y) - cy;
  return VignetteRow{cx, dy * dy, cx * cx + cy * cy, f * f, 1.0f - strength, strength};
}

namespace scalar {
void widen(const std::uint8_t* in, float* out, std::size_t n);
void composite(const std::uint8_t* fg, const std::uint8_t* bg, const float* alpha, float* out,
               std::size_t n);
void scale(float* v, std::size_t n, float gain);
void affine(float* v, std::size_t n, float offset, float slope);
void gamma(float* v, std::size_t n, float g);
void add(float* dst, const float* src, std::size_t n);
void convolve_row(const float* padded, float* out, std::size_t n, const float* taps,
                  std::size_t ntaps);
void convolve_cols(const float* const* rows, float* out, std::size_t n, const float* taps,
                   std::size_t ntaps);
void vignette_span(float* v, int x_begin, int x_end, const VignetteRow& row);
void vignette(float* v, int w, int h, float f, float strength);
std::uint8_t quantize_one(float v);
void quantize(const float* v, std::uint8_t* out, std::size_t n);
}  // namespace scalar

#if defined(BGAUG_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(BGAUG_HAVE_NEON)
const KernelTable& neon_kernels();
#endif

}  // namespace bgaug::simd
