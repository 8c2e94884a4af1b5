// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string_view>

#include "bgaug/simd/kernels.hpp"
#include "kernels_impl.hpp"

namespace bgaug::simd {
namespace {

bool cpu_has_avx2() {
#if defined(BGAUG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& resolve() {
  const auto tables = available_kernels();
  if (const char* forced = std::getenv("BGAUG_SIMD")) {
    const std::string_view want(forced);
    for (const KernelTable* t : tables) {
      if (t->name == want) return *t;
    }
  }
  return *tables.back();
}

}  // namespace

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> tables{&scalar_kernels()};
#if defined(BGAUG_HAVE_NEON)
  tables.push_back(&neon_kernels());
#endif
#if defined(BGAUG_HAVE_AVX2)
  if (cpu_has_avx2()) tables.push_back(&avx2_kernels());
#endif
  return tables;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = resolve();
  return table;
}

}  // namespace bgaug::simd
