// SPDX-License-Identifier: Apache-2.0
#include "bgaug/rng.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "bgaug/error.hpp"

namespace bgaug {

RngStream derive_substream(std::uint64_t seed, std::uint64_t epoch, std::uint64_t index,
                           Purpose purpose) noexcept {
  // Each component is offset by a distinct multiple of the golden gamma
  // before mixing so that (epoch, index) = (a, b) and (b, a) differ and zero
  // components still contribute.
  const std::uint64_t e = splitmix64_mix(epoch + 1 * kGoldenGamma);
  const std::uint64_t i = splitmix64_mix(index + 2 * kGoldenGamma);
  const std::uint64_t p = splitmix64_mix(static_cast<std::uint64_t>(purpose) + 3 * kGoldenGamma);
  return RngStream(splitmix64_mix(seed ^ e ^ i ^ p));
}

double draw_uniform(RngStream& rng, double lo, double hi) {
  if (!(lo <= hi)) throw Error(ErrorKind::Argument, "draw_uniform needs lo <= hi");
  const double u = rng.next_unit();
  if (lo == hi) return lo;
  return lo + u * (hi - lo);
}

std::int64_t draw_uniform_int(RngStream& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error(ErrorKind::Argument, "draw_uniform_int needs lo <= hi");
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(rng.next_u64());  // full 64-bit span
  // Reject the low 2^64 mod range values so the remainder is unbiased.
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    const std::uint64_t x = rng.next_u64();
    if (x >= threshold) return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
  }
}

double draw_normal(RngStream& rng, double mu, double sigma) {
  if (!(sigma >= 0.0)) throw Error(ErrorKind::Argument, "draw_normal needs sigma >= 0");
  const double u1 = rng.next_unit();
  const double u2 = rng.next_unit();
  if (sigma == 0.0) return mu;
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
  return mu + sigma * radius * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t parse_seed(std::string_view text) {
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
    base = 16;
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Argument, "invalid seed: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace bgaug
