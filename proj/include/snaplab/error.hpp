#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace snaplab {

enum class ErrorCode {
  InvalidComputation,
  InvalidConfig,
  InvalidPlan,
  LengthMismatch,
  SameEvent,
  UnknownEvent,
  TooLarge,
  InternalImplicationViolation,
  CounterexampleFound,
  Format,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidComputation: return "InvalidComputation";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SameEvent: return "SameEvent";
    case ErrorCode::UnknownEvent: return "UnknownEvent";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InternalImplicationViolation: return "InternalImplicationViolation";
    case ErrorCode::CounterexampleFound: return "CounterexampleFound";
    case ErrorCode::Format: return "Format";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace snaplab
