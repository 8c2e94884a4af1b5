// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

namespace bgaug {

/// Purpose tags for substream derivation. The numeric codes are part of the
/// reproducibility contract.
enum class Purpose : std::uint64_t {
  Background = 1,
  Pitch = 2,
  Photometric = 3,
  Noise = 4,
  Split = 5,
};

/// Frozen draw counts per purpose and sample. Noise consumes this many per pixel.
inline constexpr int kBackgroundDraws = 3;
inline constexpr int kPitchDraws = 1;
inline constexpr int kPhotometricDraws = 8;
inline constexpr int kNoiseDrawsPerPixel = 2;

/// SplitMix64 output finalizer.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// A SplitMix64 sequence. Single owner; never share one stream across threads.
class RngStream {
 public:
  explicit constexpr RngStream(std::uint64_t state) noexcept : state_(state) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += kGoldenGamma;
    ++counter_;
    return splitmix64_mix(state_);
  }

  /// Uniform in [0,1) from the top 53 bits.
  constexpr double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t state() const noexcept { return state_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t state_;
  std::uint64_t counter_ = 0;
};

/// Independent stream for one (seed, epoch, sample index, purpose) tuple.
RngStream derive_substream(std::uint64_t seed, std::uint64_t epoch, std::uint64_t index,
                           Purpose purpose) noexcept;

/// lo + u (hi - lo), u uniform in [0,1). Always consumes one draw.
double draw_uniform(RngStream& rng, double lo, double hi);

/// Uniform integer in [lo, hi] by rejection sampling (no modulo bias).
std::int64_t draw_uniform_int(RngStream& rng, std::int64_t lo, std::int64_t hi);

/// Box-Muller; consumes exactly two draws.
double draw_normal(RngStream& rng, double mu, double sigma);

/// Parses a decimal or 0x-prefixed hexadecimal 64-bit seed.
std::uint64_t parse_seed(std::string_view text);

}  // namespace bgaug
