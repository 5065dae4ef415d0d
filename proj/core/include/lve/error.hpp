#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lve {

enum class ErrorKind {
  // typing
  ArrowSharing,
  UnusedArrowBinder,
  PatternTypeMismatch,
  ApplicationMismatch,
  NonPositiveLamParam,
  NonPositivePairLeft,
  InconsistentVariableType,
  MalformedPattern,
  InvalidType,
  // semantics
  NotClosed,
  WebCapExceeded,
  // factors
  SharedVarTypeMismatch,
  BinderCapture,
  NotCanonicalized,
  UnknownVariable,
  // rewriting
  SideConditionViolated,
  TooFewDefinitions,
  OutputOverlap,
  NotPositive,
  NotDefined,
  InOutput,
  BarrenDefinition,
  NotLetTerm,
  // frontend
  SyntaxError,
  UndeclaredMatrix,
  UndeclaredArrowVariable,
  NotStochastic,
  CyclicNetwork,
  CptShapeMismatch,
  UnknownQueryVariable,
  InvalidNetwork,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this exception.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse errors additionally carry a source position (1-based).
class SourceError : public Error {
 public:
  SourceError(ErrorKind kind, const std::string& message, int line, int column);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace lve
