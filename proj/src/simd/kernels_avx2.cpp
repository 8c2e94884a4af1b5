// SPDX-License-Identifier: Apache-2.0
//
// AVX2 variants. Compiled with -mavx2 only (no -mfma): every lane performs
// the scalar reference's operations in the same order.

#include <immintrin.h>

#include "bgaug/simd/kernels.hpp"
#include "kernels_impl.hpp"

namespace bgaug::simd::avx2 {
namespace {

constexpr std::size_t kLanes = 8;

inline __m256 load_u8x8(const std::uint8_t* p) {
  const __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(p));
  return _mm256_cvtepi32_ps(_mm256_cvtepu8_epi32(bytes));
}

void widen(const std::uint8_t* in, float* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) _mm256_storeu_ps(out + i, load_u8x8(in + i));
  scalar::widen(in + i, out + i, n - i);
}

void composite(const std::uint8_t* fg, const std::uint8_t* bg, const float* alpha, float* out,
               std::size_t n) {
  const __m256 one = _mm256_set1_ps(1.0f);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256 a = _mm256_loadu_ps(alpha + i);
    const __m256 front = _mm256_mul_ps(a, load_u8x8(fg + i));
    const __m256 back = _mm256_mul_ps(_mm256_sub_ps(one, a), load_u8x8(bg + i));
    _mm256_storeu_ps(out + i, _mm256_add_ps(front, back));
  }
  scalar::composite(fg + i, bg + i, alpha + i, out + i, n - i);
}

void scale(float* v, std::size_t n, float gain) {
  const __m256 g = _mm256_set1_ps(gain);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) _mm256_storeu_ps(v + i, _mm256_mul_ps(_mm256_loadu_ps(v + i), g));
  scalar::scale(v + i, n - i, gain);
}

void affine(float* v, std::size_t n, float offset, float slope) {
  const __m256 o = _mm256_set1_ps(offset);
  const __m256 s = _mm256_set1_ps(slope);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_ps(v + i, _mm256_add_ps(o, _mm256_mul_ps(_mm256_loadu_ps(v + i), s)));
  }
  scalar::affine(v + i, n - i, offset, slope);
}

void add(float* dst, const float* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_ps(dst + i, _mm256_add_ps(_mm256_loadu_ps(dst + i), _mm256_loadu_ps(src + i)));
  }
  scalar::add(dst + i, src + i, n - i);
}

void convolve_row(const float* padded, float* out, std::size_t n, const float* taps,
                  std::size_t ntaps) {
  std::size_t x = 0;
  for (; x + kLanes <= n; x += kLanes) {
    __m256 acc = _mm256_setzero_ps();
    for (std::size_t j = 0; j < ntaps; ++j) {
      acc = _mm256_add_ps(acc, _mm256_mul_ps(_mm256_set1_ps(taps[j]), _mm256_loadu_ps(padded + x + j)));
    }
    _mm256_storeu_ps(out + x, acc);
  }
  scalar::convolve_row(padded + x, out + x, n - x, taps, ntaps);
}

void convolve_cols(const float* const* rows, float* out, std::size_t n, const float* taps,
                   std::size_t ntaps) {
  std::size_t x = 0;
  for (; x + kLanes <= n; x += kLanes) {
    __m256 acc = _mm256_setzero_ps();
    for (std::size_t j = 0; j < ntaps; ++j) {
      acc = _mm256_add_ps(acc, _mm256_mul_ps(_mm256_set1_ps(taps[j]), _mm256_loadu_ps(rows[j] + x)));
    }
    _mm256_storeu_ps(out + x, acc);
  }
  for (; x < n; ++x) {
    float acc = 0.0f;
    for (std::size_t j = 0; j < ntaps; ++j) acc = acc + taps[j] * rows[j][x];
    out[x] = acc;
  }
}

void vignette(float* v, int w, int h, float f, float strength) {
  const __m256 lane = _mm256_setr_ps(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256 one = _mm256_set1_ps(1.0f);
  for (int y = 0; y < h; ++y) {
    const VignetteRow row = make_vignette_row(w, h, y, f, strength);
    float* line = v + static_cast<std::size_t>(y) * static_cast<std::size_t>(w);
    const __m256 cx = _mm256_set1_ps(row.cx);
    const __m256 dy2 = _mm256_set1_ps(row.dy2);
    const __m256 hd2 = _mm256_set1_ps(row.hd2);
    const __m256 ff = _mm256_set1_ps(row.ff);
    const __m256 keep = _mm256_set1_ps(row.keep);
    const __m256 s = _mm256_set1_ps(row.strength);
    int x = 0;
    for (; x + static_cast<int>(kLanes) <= w; x += kLanes) {
      const __m256 xs = _mm256_add_ps(_mm256_set1_ps(static_cast<float>(x)), lane);
      const __m256 dx = _mm256_sub_ps(xs, cx);
      const __m256 d2 = _mm256_add_ps(_mm256_mul_ps(dx, dx), dy2);
      const __m256 q2 = _mm256_div_ps(_mm256_div_ps(d2, hd2), ff);
      const __m256 t = _mm256_add_ps(one, q2);
      const __m256 g = _mm256_div_ps(one, _mm256_mul_ps(t, t));
      const __m256 m = _mm256_add_ps(keep, _mm256_mul_ps(s, g));
      _mm256_storeu_ps(line + x, _mm256_mul_ps(_mm256_loadu_ps(line + x), m));
    }
    scalar::vignette_span(line, x, w, row);
  }
}

void quantize(const float* v, std::uint8_t* out, std::size_t n) {
  const __m256 half = _mm256_set1_ps(0.5f);
  const __m256 lo = _mm256_setzero_ps();
  const __m256 hi = _mm256_set1_ps(255.0f);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256 r = _mm256_floor_ps(_mm256_add_ps(_mm256_loadu_ps(v + i), half));
    r = _mm256_min_ps(_mm256_max_ps(r, lo), hi);
    const __m256i q = _mm256_cvttps_epi32(r);
    const __m128i w16 = _mm_packus_epi32(_mm256_castsi256_si128(q), _mm256_extracti128_si256(q, 1));
    _mm_storel_epi64(reinterpret_cast<__m128i*>(out + i), _mm_packus_epi16(w16, w16));
  }
  scalar::quantize(v + i, out + i, n - i);
}

}  // namespace
}  // namespace bgaug::simd::avx2

namespace bgaug::simd {

const KernelTable& avx2_kernels() {
  static const KernelTable table{
      Isa::Avx2,          "avx2",
      avx2::widen,        avx2::composite,     avx2::scale,
      avx2::affine,       scalar::gamma,       avx2::add,
      avx2::convolve_row, avx2::convolve_cols, avx2::vignette,
      avx2::quantize,
  };
  return table;
}

}  // namespace bgaug::simd
