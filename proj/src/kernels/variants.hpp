#pragma once

#include "mixdist/kernels.hpp"

namespace mixdist::kernels {

#if defined(MIXDIST_HAVE_AVX2)
std::uint64_t abs_diff_sum_avx2(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
#endif
#if defined(MIXDIST_HAVE_NEON)
std::uint64_t abs_diff_sum_neon(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
#endif

}  // namespace mixdist::kernels
