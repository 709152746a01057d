#pragma once

#include <stdexcept>
#include <string>

namespace twc {

enum class ErrorCode {
  NotPrimePower,
  TooLarge,
  DivisionByZero,
  IdenticalPoints,
  NotALine,
  ZeroVector,
  Char3Axis,
  Char3Polarity,
  Singular,
  NotClosed,
  GuardrailExceeded,
  Char3NotApplicable,
  BadMu,
  NotEnG,
  NotChar3,
  BadArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library is reported as a twc::Error carrying
/// a machine-readable code; the CLI maps codes to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace twc
