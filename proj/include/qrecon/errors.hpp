#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qrecon {

enum class ErrorCode {
  NotSquare,
  NotHermitian,
  NotPositiveDefinite,
  DimensionMismatch,
  InvalidInput,
  NotAPoset,
  NotALattice,
  NoOrthoMap,
  EnumerationBudgetExceeded,
  SearchBudgetExceeded,
  ClosureBudgetExceeded,
  OutOfRange,
  InsufficientSpan,
  DimensionTooSmall,
  NotADensityMatrix,
  NotAProjector,
  InfeasibleState,
  NotAResolution,
  NotUnitary,
  NotUnital,
  NotAnEffect,
  NotFaithful,
  VerificationFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this type; `code()` names the
// violated precondition so callers (and the CLI) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qrecon
