#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fowler {

enum class ErrorCode {
  InvalidArgument,
  NonFiniteField,
  NonHermitianInput,
  NegativeTime,
  CflViolation,
  ToleranceNotMet,
  QuadratureFailure,
  ZeroField,
  BlowUpDetected,
  DegenerateFit,
  SupportTooWide,
  SpatialFloorReached,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for all solver failures; `code()` tells them apart.
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fowler
