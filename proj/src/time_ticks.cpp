#include "mixdist/time_ticks.hpp"

#include <algorithm>

#include "mixdist/error.hpp"

namespace mixdist {

namespace {
bool is_digit(char c) { return c >= '0' && c <= '9'; }
}  // namespace

TimeTicks parse_time(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::SyntaxError, "expected digits", 0);
  if (text.front() == '-') throw Error(ErrorCode::NegativeTime, "mutation times must be nonnegative", 0);

  std::size_t pos = 0;
  uint128 whole = 0;
  while (pos < text.size() && is_digit(text[pos])) {
    whole = whole * 10 + static_cast<unsigned>(text[pos] - '0');
    if (whole > kMaxTicks) throw Error(ErrorCode::TimeOutOfRange, "time too large", 0);
    ++pos;
  }
  if (pos == 0) throw Error(ErrorCode::SyntaxError, "expected digits", 0);

  uint128 fraction = 0;
  int digits = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && is_digit(text[pos])) {
      if (++digits > kFractionDigits) {
        throw Error(ErrorCode::TooManyFractionDigits, "at most 6 fractional digits are allowed", pos);
      }
      fraction = fraction * 10 + static_cast<unsigned>(text[pos] - '0');
      ++pos;
    }
    if (pos == start) throw Error(ErrorCode::SyntaxError, "expected digits after '.'", pos);
  }
  if (pos != text.size()) throw Error(ErrorCode::SyntaxError, "unexpected character in time", pos);

  for (int i = digits; i < kFractionDigits; ++i) fraction *= 10;
  const uint128 total = whole * kTicksPerUnit + fraction;
  if (total > kMaxTicks) throw Error(ErrorCode::TimeOutOfRange, "time too large", 0);
  return TimeTicks{static_cast<std::uint64_t>(total)};
}

std::string to_string(uint128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string format_ticks_as_units(uint128 ticks) {
  std::string out = to_string(ticks / kTicksPerUnit);
  auto fraction = static_cast<std::uint64_t>(ticks % kTicksPerUnit);
  if (fraction == 0) return out;
  std::string digits = std::to_string(fraction);
  digits.insert(0, static_cast<std::size_t>(kFractionDigits) - digits.size(), '0');
  while (digits.back() == '0') digits.pop_back();
  return out + "." + digits;
}

std::string format_time(TimeTicks t) { return format_ticks_as_units(t.ticks); }

}  // namespace mixdist
