#include <arm_neon.h>

#include <cassert>

#include "kernels/variants.hpp"

namespace mixdist::kernels {

std::uint64_t abs_diff_sum_neon(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  uint64x2_t acc = vdupq_n_u64(0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const uint32x4_t d = vreinterpretq_u32_s32(vabdq_s32(vld1q_s32(a.data() + i), vld1q_s32(b.data() + i)));
    acc = vpadalq_u32(acc, d);
  }
  std::uint64_t sum = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);

  for (; i < n; ++i) {
    const std::int64_t d = static_cast<std::int64_t>(a[i]) - b[i];
    sum += static_cast<std::uint64_t>(d < 0 ? -d : d);
  }
  return sum;
}

}  // namespace mixdist::kernels
