#ifndef FEJER_ERROR_HPP
#define FEJER_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace fejer {

enum class ErrorCode {
  kNotLacunary,
  kEmptySequence,
  kNonPositiveTerm,
  kInvalidAlpha,
  kAliasingRisk,
  kIndexOutOfRange,
  kLengthMismatch,
  kGridMismatch,
  kZeroSignal,
  kInvalidArgument,
  kParseError,
  kCheckFailed,  // an internal numerical consistency check did not hold
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNotLacunary: return "NotLacunary";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kNonPositiveTerm: return "NonPositiveTerm";
    case ErrorCode::kInvalidAlpha: return "InvalidAlpha";
    case ErrorCode::kAliasingRisk: return "AliasingRisk";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kGridMismatch: return "GridMismatch";
    case ErrorCode::kZeroSignal: return "ZeroSignal";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kCheckFailed: return "CheckFailed";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fejer

#endif  // FEJER_ERROR_HPP
