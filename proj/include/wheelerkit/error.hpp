#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wheelerkit {

enum class ErrorKind {
  Parse,
  InvalidArgument,
  NotDeterministic,
  NotReadable,
  StateBlowupExceeded,
  SearchBudgetExceeded,
  InfeasibleEnumeration,
  ConstructionInconsistent,
  InternalDisagreement,
  AlphabetTooLarge,
  TooManyElements,
  PreconditionEpsilonNotAccepted,
  MalformedInstance,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotDeterministic: return "NotDeterministic";
    case ErrorKind::NotReadable: return "NotReadable";
    case ErrorKind::StateBlowupExceeded: return "StateBlowupExceeded";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::InfeasibleEnumeration: return "InfeasibleEnumeration";
    case ErrorKind::ConstructionInconsistent: return "ConstructionInconsistent";
    case ErrorKind::InternalDisagreement: return "InternalDisagreement";
    case ErrorKind::AlphabetTooLarge: return "AlphabetTooLarge";
    case ErrorKind::TooManyElements: return "TooManyElements";
    case ErrorKind::PreconditionEpsilonNotAccepted: return "PreconditionEpsilonNotAccepted";
    case ErrorKind::MalformedInstance: return "MalformedInstance";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library. The kind is what
/// callers (notably the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Resource limits rather than bad input: the question may have an answer,
  /// it just was not computed under the configured caps.
  bool is_budget() const noexcept {
    switch (kind_) {
      case ErrorKind::StateBlowupExceeded:
      case ErrorKind::SearchBudgetExceeded:
      case ErrorKind::InfeasibleEnumeration:
      case ErrorKind::AlphabetTooLarge:
      case ErrorKind::TooManyElements:
      case ErrorKind::InternalDisagreement:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace wheelerkit
