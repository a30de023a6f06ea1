#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aa {

enum class ErrorCode {
  DimensionMismatch,
  CapacityExceeded,
  EmptyFactorization,
  SingularTriangular,
  DegenerateDifference,
  ZeroResidual,
  InvalidSize,
  ParamOutOfRange,
  ZeroNorm,
  HypothesisViolated,
  OutsideBall,
  DegenerateAlpha,
  EmptyHistory,
  DegeneratePair,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying one of the library's error codes.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace aa
