#include "fowler/error.hpp"

namespace fowler {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFiniteField: return "NonFiniteField";
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::ZeroField: return "ZeroField";
    case ErrorCode::BlowUpDetected: return "BlowUpDetected";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::SupportTooWide: return "SupportTooWide";
    case ErrorCode::SpatialFloorReached: return "SpatialFloorReached";
  }
  return "Unknown";
}

}  // namespace fowler
