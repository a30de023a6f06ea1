#include "aa/errors.hpp"

namespace aa {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::EmptyFactorization: return "EmptyFactorization";
    case ErrorCode::SingularTriangular: return "SingularTriangular";
    case ErrorCode::DegenerateDifference: return "DegenerateDifference";
    case ErrorCode::ZeroResidual: return "ZeroResidual";
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::OutsideBall: return "OutsideBall";
    case ErrorCode::DegenerateAlpha: return "DegenerateAlpha";
    case ErrorCode::EmptyHistory: return "EmptyHistory";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace aa
