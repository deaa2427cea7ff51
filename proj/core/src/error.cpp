#include "schurlab/error.hpp"

namespace schurlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OrderUnsupported: return "OrderUnsupported";
    case ErrorCode::DegenerateTolerance: return "DegenerateTolerance";
    case ErrorCode::CoincidentPivot: return "CoincidentPivot";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OriginQuery: return "OriginQuery";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::DiagonalQuery: return "DiagonalQuery";
    case ErrorCode::DiagonalMargin: return "DiagonalMargin";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::IndexConstraint: return "IndexConstraint";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::ScaleMismatch: return "ScaleMismatch";
    case ErrorCode::CoefficientBound: return "CoefficientBound";
    case ErrorCode::CarlesonViolation: return "CarlesonViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(std::string module, ErrorCode code, const std::string& detail)
    : std::runtime_error(module + ": " + to_string(code) + ": " + detail),
      module_(std::move(module)),
      code_(code) {}

}  // namespace schurlab
