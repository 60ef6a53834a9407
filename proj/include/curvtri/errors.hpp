#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvtri {

enum class ErrorCode {
  InvalidInput,
  NonPositiveSide,
  TriangleInequalityViolated,
  SphericalDomainViolated,
  SideLengthCapExceeded,
  NoCircumcircle,
  DegenerateTriangle,
  ConditioningError,
  ProjectionDomainError,
  HemisphereViolation,
  RejectionBudgetExceeded,
  EvaluationError,
  TheoremPreconditionError,
  UnknownInequality,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NonPositiveSide: return "NonPositiveSide";
    case ErrorCode::TriangleInequalityViolated: return "TriangleInequalityViolated";
    case ErrorCode::SphericalDomainViolated: return "SphericalDomainViolated";
    case ErrorCode::SideLengthCapExceeded: return "SideLengthCapExceeded";
    case ErrorCode::NoCircumcircle: return "NoCircumcircle";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::ConditioningError: return "ConditioningError";
    case ErrorCode::ProjectionDomainError: return "ProjectionDomainError";
    case ErrorCode::HemisphereViolation: return "HemisphereViolation";
    case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::EvaluationError: return "EvaluationError";
    case ErrorCode::TheoremPreconditionError: return "TheoremPreconditionError";
    case ErrorCode::UnknownInequality: return "UnknownInequality";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception; `code()`
/// names the violated invariant so front ends can map it to exit codes.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace curvtri
