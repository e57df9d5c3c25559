#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace respond {

enum class ErrorCode {
  NonHermitian,
  NonSymmetric,
  DimensionMismatch,
  InvalidState,
  SqueezeOverflow,
  SpectralOverflow,
  SingularMatrix,
  ReconstructionFailure,
  NotOrthogonal,
  ReflectionInput,
  IndexOutOfRange,
  InvalidModel,
  UnsupportedPathway,
  UnsupportedSides,
  TruncationTooSmall,
  NoConvergence,
  DimensionLimit,
  SchemaError,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; the code lets callers
// (the CLI in particular) classify failures without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace respond
