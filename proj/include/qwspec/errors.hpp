#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qwspec {

enum class ErrorKind {
  ParseError,
  DuplicateEdge,
  SelfLoopForbidden,
  IsolatedVertex,
  DimensionMismatch,
  ModelInvariantViolation,
  AssumptionViolated,
  DomainError,
  OutOfRange,
  NumericalError,
  EigenresidualError,
};

std::string_view error_name(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above; the
/// CLI prints `name() + " " + what()` and maps the kind to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

/// Input-side failures (bad files, violated preconditions) as opposed to
/// numerical breakdowns during the analysis.
bool is_input_error(ErrorKind kind);

}  // namespace qwspec
