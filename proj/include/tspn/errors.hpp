#pragma once

#include <stdexcept>
#include <string>

namespace tspn {

enum class ErrorKind {
  UnboundedPolytope,
  EmptyPolytope,
  EmptyKeepSet,
  ParseError,
  DimensionOutOfRange,
  ZeroNormal,
  BaseSetTooLarge,
  TrivialBaseSet,
  DegenerateConfiguration,
  NumericalFailure,
  GuessMismatch,
  DegenerateBody,
  ContainmentViolation,
  Infeasible,
  TooManyPoints,
  NoCandidateFound,
  DimensionUnsupported,
  InternalAssertion,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; `kind()` tells callers (and the CLI
// exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorKind::EmptyPolytope: return "EmptyPolytope";
    case ErrorKind::EmptyKeepSet: return "EmptyKeepSet";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorKind::ZeroNormal: return "ZeroNormal";
    case ErrorKind::BaseSetTooLarge: return "BaseSetTooLarge";
    case ErrorKind::TrivialBaseSet: return "TrivialBaseSet";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::GuessMismatch: return "GuessMismatch";
    case ErrorKind::DegenerateBody: return "DegenerateBody";
    case ErrorKind::ContainmentViolation: return "ContainmentViolation";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::TooManyPoints: return "TooManyPoints";
    case ErrorKind::NoCandidateFound: return "NoCandidateFound";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::InternalAssertion: return "InternalAssertion";
  }
  return "Unknown";
}

}  // namespace tspn
