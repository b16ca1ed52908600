#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// Data-parallel inner loops. Every kernel has a portable scalar reference;
// vector variants must return bit-identical results and are chosen at runtime.
namespace mixdist::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);

/// sum_i |a[i] - b[i]| over equal-length spans of nonnegative values.
using AbsDiffSumFn = std::uint64_t (*)(std::span<const std::int32_t>, std::span<const std::int32_t>);

std::uint64_t abs_diff_sum_scalar(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

/// Variants compiled into this build and supported by the running CPU, scalar first.
std::vector<Isa> available_isas();

/// Best available variant, detected once.
Isa preferred_isa();

/// Kernel for `isa`; nullptr when that variant is unavailable here.
AbsDiffSumFn abs_diff_sum_for(Isa isa);

inline std::uint64_t abs_diff_sum(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  static const AbsDiffSumFn fn = abs_diff_sum_for(preferred_isa());
  return fn(a, b);
}

}  // namespace mixdist::kernels
