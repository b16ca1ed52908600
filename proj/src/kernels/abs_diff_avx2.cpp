#include <immintrin.h>

#include <cassert>

#include "kernels/variants.hpp"

namespace mixdist::kernels {

std::uint64_t abs_diff_sum_avx2(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  __m256i acc_lo = _mm256_setzero_si256();
  __m256i acc_hi = _mm256_setzero_si256();

  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    // Inputs are nonnegative, so the difference fits in int32.
    const __m256i d = _mm256_abs_epi32(_mm256_sub_epi32(va, vb));
    acc_lo = _mm256_add_epi64(acc_lo, _mm256_cvtepu32_epi64(_mm256_castsi256_si128(d)));
    acc_hi = _mm256_add_epi64(acc_hi, _mm256_cvtepu32_epi64(_mm256_extracti128_si256(d, 1)));
  }

  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), _mm256_add_epi64(acc_lo, acc_hi));
  std::uint64_t sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];

  for (; i < n; ++i) {
    const std::int64_t d = static_cast<std::int64_t>(a[i]) - b[i];
    sum += static_cast<std::uint64_t>(d < 0 ? -d : d);
  }
  return sum;
}

}  // namespace mixdist::kernels
