#include "retract/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace retract::kernels {

std::int32_t max_cycle_stretch_scalar(const std::int32_t* a, const std::int32_t* b, std::size_t m, std::int32_t k) {
  std::int32_t best = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::int32_t d = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
    d = std::min(d, k - d);
    best = std::max(best, d);
  }
  return best;
}

__attribute__((target("avx2"))) std::int32_t max_cycle_stretch_avx2(const std::int32_t* a, const std::int32_t* b,
                                                                    std::size_t m, std::int32_t k) {
  const __m256i kk = _mm256_set1_epi32(k);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i d = _mm256_abs_epi32(_mm256_sub_epi32(va, vb));
    d = _mm256_min_epi32(d, _mm256_sub_epi32(kk, d));
    acc = _mm256_max_epi32(acc, d);
  }
  // horizontal max
  __m128i lo = _mm256_castsi256_si128(acc);
  __m128i hi = _mm256_extracti128_si256(acc, 1);
  __m128i mx = _mm_max_epi32(lo, hi);
  mx = _mm_max_epi32(mx, _mm_shuffle_epi32(mx, _MM_SHUFFLE(1, 0, 3, 2)));
  mx = _mm_max_epi32(mx, _mm_shuffle_epi32(mx, _MM_SHUFFLE(2, 3, 0, 1)));
  std::int32_t best = _mm_cvtsi128_si32(mx);
  if (i < m) best = std::max(best, max_cycle_stretch_scalar(a + i, b + i, m - i, k));
  return best;
}

bool avx2_available() {
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
}

std::int32_t max_cycle_stretch(const std::int32_t* a, const std::int32_t* b, std::size_t m, std::int32_t k) {
  if (avx2_available()) return max_cycle_stretch_avx2(a, b, m, k);
  return max_cycle_stretch_scalar(a, b, m, k);
}

}  // namespace retract::kernels
