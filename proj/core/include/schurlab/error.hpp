#pragma once

#include <stdexcept>
#include <string>

namespace schurlab {

enum class ErrorCode {
  OrderUnsupported,
  DegenerateTolerance,
  CoincidentPivot,
  ConvergenceFailure,
  BadExponent,
  DimensionMismatch,
  OriginQuery,
  PoleHit,
  DiagonalQuery,
  DiagonalMargin,
  SupportViolation,
  IndexConstraint,
  OutOfWindow,
  ScaleMismatch,
  CoefficientBound,
  CarlesonViolation,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

// Raised by every module; carries the originating module name.
class Error : public std::runtime_error {
 public:
  Error(std::string module, ErrorCode code, const std::string& detail);

  const std::string& module() const noexcept { return module_; }
  ErrorCode code() const noexcept { return code_; }
  bool is_convergence() const noexcept { return code_ == ErrorCode::ConvergenceFailure; }

 private:
  std::string module_;
  ErrorCode code_;
};

}  // namespace schurlab
