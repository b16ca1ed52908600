#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mixdist {

__extension__ using uint128 = unsigned __int128;

/// Ticks per time unit written in tree files. Fixed; decimals with more
/// fractional digits than this scale allows are rejected.
inline constexpr std::uint64_t kTicksPerUnit = 1'000'000;
inline constexpr int kFractionDigits = 6;
inline constexpr std::uint64_t kMaxTicks = static_cast<std::uint64_t>(INT64_MAX);

/// Exact mutation time in units of 1e-6. Leaves have an implicit time of zero.
struct TimeTicks {
  std::uint64_t ticks = 0;

  constexpr TimeTicks() = default;
  constexpr explicit TimeTicks(std::uint64_t t) : ticks(t) {}

  static constexpr TimeTicks from_units(std::uint64_t units) { return TimeTicks{units * kTicksPerUnit}; }

  friend constexpr auto operator<=>(TimeTicks, TimeTicks) = default;
};

constexpr std::uint64_t abs_diff(TimeTicks a, TimeTicks b) {
  return a.ticks > b.ticks ? a.ticks - b.ticks : b.ticks - a.ticks;
}

/// Parses `digits ["." 1-6 digits]`. Throws Error(SyntaxError | TooManyFractionDigits |
/// NegativeTime | TimeOutOfRange); offsets are relative to `text`.
TimeTicks parse_time(std::string_view text);

/// Shortest decimal: no trailing fractional zeros, no "." for whole values.
std::string format_time(TimeTicks t);

std::string to_string(uint128 value);

/// Renders a tick count in time units with at most six fractional digits.
std::string format_ticks_as_units(uint128 ticks);

}  // namespace mixdist
