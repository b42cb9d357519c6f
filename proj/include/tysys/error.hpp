#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tysys {

enum class ErrorCode {
  NotGeneralizedCartan,
  NotSymmetrizable,
  NotTamelyLaced,
  NotSimplyLaced,
  NotBipartite,
  AlreadyBipartite,
  Disconnected,
  NotSkewSymmetrizable,
  DivisionByZeroPoly,
  InverseOfZero,
  EvalDivisionByZero,
  NotPositive,
  LevelOutOfRange,
  EmptyWindow,
  MissingValue,
  ZeroDivisor,
  UnschedulableDependency,
  WindowTooNarrow,
  Unsupported,
  IndexOutOfRange,
  NoParity,
  ConditionsViolated,
  ParseError,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotGeneralizedCartan: return "NotGeneralizedCartan";
    case ErrorCode::NotSymmetrizable: return "NotSymmetrizable";
    case ErrorCode::NotTamelyLaced: return "NotTamelyLaced";
    case ErrorCode::NotSimplyLaced: return "NotSimplyLaced";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::AlreadyBipartite: return "AlreadyBipartite";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NotSkewSymmetrizable: return "NotSkewSymmetrizable";
    case ErrorCode::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case ErrorCode::InverseOfZero: return "InverseOfZero";
    case ErrorCode::EvalDivisionByZero: return "EvalDivisionByZero";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::UnschedulableDependency: return "UnschedulableDependency";
    case ErrorCode::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NoParity: return "NoParity";
    case ErrorCode::ConditionsViolated: return "ConditionsViolated";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tysys
