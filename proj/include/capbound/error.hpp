#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace capbound {

enum class ErrorKind {
  CompositeP,
  DegreeZero,
  ZeroInverse,
  FieldMismatch,
  BudgetExceeded,
  AmbientMismatch,
  ParameterRange,
  NotInDomain,
  WrongCharacteristic,
  ArityUnsupported,
  DomainError,
  BracketFailure,
  ParityUnsupported,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::CompositeP: return "CompositeP";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::ZeroInverse: return "ZeroInverse";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::ParameterRange: return "ParameterRange";
    case ErrorKind::NotInDomain: return "NotInDomain";
    case ErrorKind::WrongCharacteristic: return "WrongCharacteristic";
    case ErrorKind::ArityUnsupported: return "ArityUnsupported";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::ParityUnsupported: return "ParityUnsupported";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` carries the category.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace capbound
