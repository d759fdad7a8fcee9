#pragma once

#include <stdexcept>
#include <string>

namespace tanfp {

enum class ErrorKind {
  DomainViolation,
  WeightSumViolation,
  LengthMismatch,
  InfeasibleSchedule,
  MissingConstants,
  NotAFixedPoint,
  ParseError,
  ValidationError,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::WeightSumViolation: return "WeightSumViolation";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InfeasibleSchedule: return "InfeasibleSchedule";
    case ErrorKind::MissingConstants: return "MissingConstants";
    case ErrorKind::NotAFixedPoint: return "NotAFixedPoint";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Error";
}


/// Single exception type for the library; `kind()` distinguishes failure classes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace tanfp
