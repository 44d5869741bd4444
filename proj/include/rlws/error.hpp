#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rlws {

enum class ErrorCode {
  // input validation
  RejectZeroA,
  RejectZeroB,
  RejectZeroDiscriminant,
  RejectNegativeA,
  InvalidArgument,
  // numerical
  DomainViolation,
  BoundarySingularity,
  AxisSingularity,
  SingularDenominator,
  StallAtCriticalPoint,
  StepBudgetExhausted,
  InvalidStart,
  NumericalDivergence,
  UnboundedCurvature,
  BoundaryContact,
  InsufficientSamples,
  EmptyOrbit,
  PoleOnSurface,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::RejectZeroA: return "RejectZeroA";
    case ErrorCode::RejectZeroB: return "RejectZeroB";
    case ErrorCode::RejectZeroDiscriminant: return "RejectZeroDiscriminant";
    case ErrorCode::RejectNegativeA: return "RejectNegativeA";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::BoundarySingularity: return "BoundarySingularity";
    case ErrorCode::AxisSingularity: return "AxisSingularity";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::StallAtCriticalPoint: return "StallAtCriticalPoint";
    case ErrorCode::StepBudgetExhausted: return "StepBudgetExhausted";
    case ErrorCode::InvalidStart: return "InvalidStart";
    case ErrorCode::NumericalDivergence: return "NumericalDivergence";
    case ErrorCode::UnboundedCurvature: return "UnboundedCurvature";
    case ErrorCode::BoundaryContact: return "BoundaryContact";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::EmptyOrbit: return "EmptyOrbit";
    case ErrorCode::PoleOnSurface: return "PoleOnSurface";
  }
  return "Unknown";
}

/// True for errors caused by the caller's input rather than by the numerics.
constexpr bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::RejectZeroA:
    case ErrorCode::RejectZeroB:
    case ErrorCode::RejectZeroDiscriminant:
    case ErrorCode::RejectNegativeA:
    case ErrorCode::InvalidArgument:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rlws
