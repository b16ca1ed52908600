#include <cassert>

#include "mixdist/kernels.hpp"

namespace mixdist::kernels {

std::uint64_t abs_diff_sum_scalar(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  assert(a.size() == b.size());
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t d = static_cast<std::int64_t>(a[i]) - b[i];
    sum += static_cast<std::uint64_t>(d < 0 ? -d : d);
  }
  return sum;
}

}  // namespace mixdist::kernels
