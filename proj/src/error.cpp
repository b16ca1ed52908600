#include "mixdist/error.hpp"

namespace mixdist {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NotBinary: return "NotBinary";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::Cycle: return "Cycle";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::MissingLabel: return "MissingLabel";
    case ErrorCode::UnexpectedLabel: return "UnexpectedLabel";
    case ErrorCode::DanglingChild: return "DanglingChild";
    case ErrorCode::MissingTime: return "MissingTime";
    case ErrorCode::UnexpectedTime: return "UnexpectedTime";
    case ErrorCode::NonMonotoneTime: return "NonMonotoneTime";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::TooManyFractionDigits: return "TooManyFractionDigits";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::SameLeaf: return "SameLeaf";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
  }
  return "Unknown";
}

std::string_view error_prefix(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotComparable: return "E_COMPARE";
    case ErrorCode::Overflow: return "E_OVERFLOW";
    case ErrorCode::InvalidSpec: return "E_SPEC";
    default: return "E_PARSE";
  }
}

namespace {
std::string decorate(ErrorCode code, const std::string& message, std::optional<std::size_t> offset) {
  std::string out{to_string(code)};
  if (offset) out += " at offset " + std::to_string(*offset);
  if (!message.empty()) out += ": " + message;
  return out;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> offset)
    : std::runtime_error(decorate(code, message, offset)), code_(code), offset_(offset) {}

}  // namespace mixdist
