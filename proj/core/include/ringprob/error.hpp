#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ringprob {

/// Every failure raised by the library carries one of these codes so the CLI
/// can map it onto an exit status without string matching.
enum class ErrorCode {
  kNonPrime,
  kDegreeOutOfRange,
  kMixedFields,
  kDivisionByZero,
  kMixedRings,
  kInvalidRing,
  kSizeCapExceeded,
  kNotAnIdeal,
  kImproperIdeal,
  kNotLocal,
  kNTooSmall,
  kNotChain,
  kNotJ2Zero,
  kBadDimensionOrder,
  kParseError,
  kValidationError,
  kInternal,
};

std::string_view error_code_name(ErrorCode code);

class RingError : public std::runtime_error {
 public:
  RingError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code), message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// what() without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

/// Parse failures additionally record the byte offset into the input.
class ParseError : public RingError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : RingError(ErrorCode::kParseError,
                  message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw RingError(code, message);
}

/// Internal consistency assertion; failures indicate a bug, not bad input.
inline void check_internal(bool condition, const char* what) {
  if (!condition) {
    throw RingError(ErrorCode::kInternal, what);
  }
}

}  // namespace ringprob
