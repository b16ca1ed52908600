#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mixdist {

enum class ErrorCode {
  EmptyInput,
  NotBinary,
  MultipleRoots,
  Cycle,
  DuplicateLabel,
  MissingLabel,
  UnexpectedLabel,
  DanglingChild,
  MissingTime,
  UnexpectedTime,
  NonMonotoneTime,
  SyntaxError,
  TooManyFractionDigits,
  NegativeTime,
  TimeOutOfRange,
  NotComparable,
  Overflow,
  SameLeaf,
  DegenerateInput,
  InvalidSpec,
};

std::string_view to_string(ErrorCode code);

/// Machine-greppable prefix used by the CLI (E_PARSE, E_COMPARE, E_OVERFLOW, E_SPEC).
std::string_view error_prefix(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<std::size_t> offset = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  /// Byte offset into the parsed text, when the error came from a parser.
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace mixdist
