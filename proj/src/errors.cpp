#include "qwspec/errors.hpp"

namespace qwspec {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::SelfLoopForbidden: return "SelfLoopForbidden";
    case ErrorKind::IsolatedVertex: return "IsolatedVertex";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ModelInvariantViolation: return "ModelInvariantViolation";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NumericalError: return "NumericalError";
    case ErrorKind::EigenresidualError: return "EigenresidualError";
  }
  return "Error";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NumericalError:
    case ErrorKind::EigenresidualError:
    case ErrorKind::OutOfRange:
      return false;
    default:
      return true;
  }
}

}  // namespace qwspec
