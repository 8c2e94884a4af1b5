// SPDX-License-Identifier: Apache-2.0
//
// AArch64 NEON variants. Separate multiply and add intrinsics (never vfmaq)
// keep every lane bit-identical to the scalar reference.

#include <arm_neon.h>

#include "bgaug/simd/kernels.hpp"
#include "kernels_impl.hpp"

namespace bgaug::simd::neon {
namespace {

constexpr std::size_t kLanes = 4;

inline float32x4_t load_u8x4(const std::uint8_t* p) {
  const std::uint32_t packed = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                               (static_cast<std::uint32_t>(p[2]) << 16) |
                               (static_cast<std::uint32_t>(p[3]) << 24);
  const uint8x8_t b = vreinterpret_u8_u32(vdup_n_u32(packed));
  const uint16x4_t w = vget_low_u16(vmovl_u8(b));
  return vcvtq_f32_u32(vmovl_u16(w));
}

void widen(const std::uint8_t* in, float* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) vst1q_f32(out + i, load_u8x4(in + i));
  scalar::widen(in + i, out + i, n - i);
}

void composite(const std::uint8_t* fg, const std::uint8_t* bg, const float* alpha, float* out,
               std::size_t n) {
  const float32x4_t one = vdupq_n_f32(1.0f);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float32x4_t a = vld1q_f32(alpha + i);
    const float32x4_t front = vmulq_f32(a, load_u8x4(fg + i));
    const float32x4_t back = vmulq_f32(vsubq_f32(one, a), load_u8x4(bg + i));
    vst1q_f32(out + i, vaddq_f32(front, back));
  }
  scalar::composite(fg + i, bg + i, alpha + i, out + i, n - i);
}

void scale(float* v, std::size_t n, float gain) {
  const float32x4_t g = vdupq_n_f32(gain);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) vst1q_f32(v + i, vmulq_f32(vld1q_f32(v + i), g));
  scalar::scale(v + i, n - i, gain);
}

void affine(float* v, std::size_t n, float offset, float slope) {
  const float32x4_t o = vdupq_n_f32(offset);
  const float32x4_t s = vdupq_n_f32(slope);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) vst1q_f32(v + i, vaddq_f32(o, vmulq_f32(vld1q_f32(v + i), s)));
  scalar::affine(v + i, n - i, offset, slope);
}

void add(float* dst, const float* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) vst1q_f32(dst + i, vaddq_f32(vld1q_f32(dst + i), vld1q_f32(src + i)));
  scalar::add(dst + i, src + i, n - i);
}

void convolve_row(const float* padded, float* out, std::size_t n, const float* taps,
                  std::size_t ntaps) {
  std::size_t x = 0;
  for (; x + kLanes <= n; x += kLanes) {
    float32x4_t acc = vdupq_n_f32(0.0f);
    for (std::size_t j = 0; j < ntaps; ++j) {
      acc = vaddq_f32(acc, vmulq_f32(vdupq_n_f32(taps[j]), vld1q_f32(padded + x + j)));
    }
    vst1q_f32(out + x, acc);
  }
  scalar::convolve_row(padded + x, out + x, n - x, taps, ntaps);
}

void convolve_cols(const float* const* rows, float* out, std::size_t n, const float* taps,
                   std::size_t ntaps) {
  std::size_t x = 0;
  for (; x + kLanes <= n; x += kLanes) {
    float32x4_t acc = vdupq_n_f32(0.0f);
    for (std::size_t j = 0; j < ntaps; ++j) {
      acc = vaddq_f32(acc, vmulq_f32(vdupq_n_f32(taps[j]), vld1q_f32(rows[j] + x)));
    }
    vst1q_f32(out + x, acc);
  }
  for (; x < n; ++x) {
    float acc = 0.0f;
    for (std::size_t j = 0; j < ntaps; ++j) acc = acc + taps[j] * rows[j][x];
    out[x] = acc;
  }
}

void vignette(float* v, int w, int h, float f, float strength) {
  const float lane_init[4] = {0.0f, 1.0f, 2.0f, 3.0f};
  const float32x4_t lane = vld1q_f32(lane_init);
  const float32x4_t one = vdupq_n_f32(1.0f);
  for (int y = 0; y < h; ++y) {
    const VignetteRow row = make_vignette_row(w, h, y, f, strength);
    float* line = v + static_cast<std::size_t>(y) * static_cast<std::size_t>(w);
    int x = 0;
    for (; x + static_cast<int>(kLanes) <= w; x += kLanes) {
      const float32x4_t xs = vaddq_f32(vdupq_n_f32(static_cast<float>(x)), lane);
      const float32x4_t dx = vsubq_f32(xs, vdupq_n_f32(row.cx));
      const float32x4_t d2 = vaddq_f32(vmulq_f32(dx, dx), vdupq_n_f32(row.dy2));
      const float32x4_t q2 = vdivq_f32(vdivq_f32(d2, vdupq_n_f32(row.hd2)), vdupq_n_f32(row.ff));
      const float32x4_t t = vaddq_f32(one, q2);
      const float32x4_t g = vdivq_f32(one, vmulq_f32(t, t));
      const float32x4_t m = vaddq_f32(vdupq_n_f32(row.keep), vmulq_f32(vdupq_n_f32(row.strength), g));
      vst1q_f32(line + x, vmulq_f32(vld1q_f32(line + x), m));
    }
    scalar::vignette_span(line, x, w, row);
  }
}

void quantize(const float* v, std::uint8_t* out, std::size_t n) {
  const float32x4_t half = vdupq_n_f32(0.5f);
  const float32x4_t lo = vdupq_n_f32(0.0f);
  const float32x4_t hi = vdupq_n_f32(255.0f);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    float32x4_t r = vrndmq_f32(vaddq_f32(vld1q_f32(v + i), half));
    r = vminq_f32(vmaxq_f32(r, lo), hi);
    const uint32x4_t q = vcvtq_u32_f32(r);
    for (std::size_t k = 0; k < kLanes; ++k) {
      out[i + k] = static_cast<std::uint8_t>(q[k]);
    }
  }
  scalar::quantize(v + i, out + i, n - i);
}

}  // namespace
}  // namespace bgaug::simd::neon

namespace bgaug::simd {

const KernelTable& neon_kernels() {
  static const KernelTable table{
      Isa::Neon,          "neon",
      neon::widen,        neon::composite,     neon::scale,
      neon::affine,       scalar::gamma,       neon::add,
      neon::convolve_row, neon::convolve_cols, neon::vignette,
      neon::quantize,
  };
  return table;
}

}  // namespace bgaug::simd
