#include "lve/error.hpp"

namespace lve {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ArrowSharing: return "ArrowSharing";
    case ErrorKind::UnusedArrowBinder: return "UnusedArrowBinder";
    case ErrorKind::PatternTypeMismatch: return "PatternTypeMismatch";
    case ErrorKind::ApplicationMismatch: return "ApplicationMismatch";
    case ErrorKind::NonPositiveLamParam: return "NonPositiveLamParam";
    case ErrorKind::NonPositivePairLeft: return "NonPositivePairLeft";
    case ErrorKind::InconsistentVariableType: return "InconsistentVariableType";
    case ErrorKind::MalformedPattern: return "MalformedPattern";
    case ErrorKind::InvalidType: return "InvalidType";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::WebCapExceeded: return "WebCapExceeded";
    case ErrorKind::SharedVarTypeMismatch: return "SharedVarTypeMismatch";
    case ErrorKind::BinderCapture: return "BinderCapture";
    case ErrorKind::NotCanonicalized: return "NotCanonicalized";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::SideConditionViolated: return "SideConditionViolated";
    case ErrorKind::TooFewDefinitions: return "TooFewDefinitions";
    case ErrorKind::OutputOverlap: return "OutputOverlap";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotDefined: return "NotDefined";
    case ErrorKind::InOutput: return "InOutput";
    case ErrorKind::BarrenDefinition: return "BarrenDefinition";
    case ErrorKind::NotLetTerm: return "NotLetTerm";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndeclaredMatrix: return "UndeclaredMatrix";
    case ErrorKind::UndeclaredArrowVariable: return "UndeclaredArrowVariable";
    case ErrorKind::NotStochastic: return "NotStochastic";
    case ErrorKind::CyclicNetwork: return "CyclicNetwork";
    case ErrorKind::CptShapeMismatch: return "CptShapeMismatch";
    case ErrorKind::UnknownQueryVariable: return "UnknownQueryVariable";
    case ErrorKind::InvalidNetwork: return "InvalidNetwork";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

SourceError::SourceError(ErrorKind kind, const std::string& message, int line, int column)
    : Error(kind, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace lve
