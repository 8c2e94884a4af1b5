// SPDX-License-Identifier: Apache-2.0
#pragma once

// Inner-loop kernels shared by the imaging and augmentation modules.
//
// Every ISA variant performs the same IEEE-754 single precision operations
// in the same order as the scalar reference, so all variants produce
// bit-identical results. The build disables FP contraction to keep it that
// way; vector variants never use FMA.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace bgaug::simd {

enum class Isa { Scalar, Avx2, Neon };

struct KernelTable {
  Isa isa;
  std::string_view name;

  // out[i] = in[i]
  void (*widen)(const std::uint8_t* in, float* out, std::size_t n);
  // out[i] = a[i] * fg[i] + (1 - a[i]) * bg[i]
  void (*composite)(const std::uint8_t* fg, const std::uint8_t* bg, const float* alpha, float* out,
                    std::size_t n);
  // v[i] = v[i] * gain
  void (*scale)(float* v, std::size_t n, float gain);
  // v[i] = offset + v[i] * slope
  void (*affine)(float* v, std::size_t n, float offset, float slope);
  // v[i] = 255 * (clamp(v[i], 0, 255) / 255) ^ gamma
  void (*gamma)(float* v, std::size_t n, float gamma);
  // dst[i] = dst[i] + src[i]
  void (*add)(float* dst, const float* src, std::size_t n);
  // out[x] = sum_j taps[j] * padded[x + j], j ascending from 0
  void (*convolve_row)(const float* padded, float* out, std::size_t n, const float* taps,
                       std::size_t ntaps);
  // out[x] = sum_j taps[j] * rows[j][x], j ascending from 0
  void (*convolve_cols)(const float* const* rows, float* out, std::size_t n, const float* taps,
                        std::size_t ntaps);
  // Multiplies a w x h plane by (1 - strength) + strength * (1 + q2)^-2 with
  // q2 = d2 / hd2 / f^2, where d2 is the squared distance of the pixel center
  // from the image center and hd2 the squared half-diagonal (both between
  // pixel centers). Requires hd2 > 0.
  void (*vignette)(float* v, int w, int h, float f, float strength);
  // out[i] = clamp(floor(v[i] + 0.5), 0, 255)
  void (*quantize)(const float* v, std::uint8_t* out, std::size_t n);
};

const KernelTable& scalar_kernels();

/// Tables compiled into this binary and supported by the running CPU,
/// scalar first.
std::vector<const KernelTable*> available_kernels();

/// The table used by the library. Picks the widest supported ISA unless the
/// BGAUG_SIMD environment variable names another one ("scalar", "avx2",
/// "neon"). Resolved once.
const KernelTable& active_kernels();

}  // namespace bgaug::simd
