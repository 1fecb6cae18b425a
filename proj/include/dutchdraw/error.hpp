#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dutchdraw {

enum class ErrorCode {
  LengthMismatch,
  NonBinaryValue,
  UndefinedMeasure,
  PtDenominatorZero,
  NonlinearMeasure,
  UnsupportedMeasure,
  ThetaOutOfRange,
  ShapeMismatch,
  TooLarge,
  DegenerateScale,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// CLI and the tests dispatch on code(), never on the message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dutchdraw
