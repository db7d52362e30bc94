#include "qrecon/errors.hpp"

namespace qrecon {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotAPoset: return "NotAPoset";
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::NoOrthoMap: return "NoOrthoMap";
    case ErrorCode::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::ClosureBudgetExceeded: return "ClosureBudgetExceeded";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InsufficientSpan: return "InsufficientSpan";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::NotADensityMatrix: return "NotADensityMatrix";
    case ErrorCode::NotAProjector: return "NotAProjector";
    case ErrorCode::InfeasibleState: return "InfeasibleState";
    case ErrorCode::NotAResolution: return "NotAResolution";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotUnital: return "NotUnital";
    case ErrorCode::NotAnEffect: return "NotAnEffect";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

}  // namespace qrecon
