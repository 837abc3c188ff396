#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chromlc {

enum class ErrorKind {
  NotHermitian,
  NotUnitary,
  NoConvergence,
  DimensionMismatch,
  TooLarge,
  OutOfRange,
  IndexOutOfRange,
  InvalidGraph,
  InvalidSchedule,
  ParseError,
  SchemaVersionMismatch,
  EpsilonTooLarge,
  NotConstant,
  BadParams,
  ToleranceUnreachable,
  NormDrift,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::InvalidSchedule: return "InvalidSchedule";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorKind::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorKind::NotConstant: return "NotConstant";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorKind::NormDrift: return "NormDrift";
  }
  return "Unknown";
}

}  // namespace chromlc
