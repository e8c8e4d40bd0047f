#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mixest {

enum class ErrorCode {
  NotSquare,
  NotHermitian,
  NotUnitTrace,
  NotPSD,
  EffectTooLarge,
  InvalidPovm,
  WrongDimension,
  VectorTooLong,
  DimensionMismatch,
  NotCommuting,
  ZeroMeanPrior,
  InvalidPrior,
  NonUniformPrior,
  NonPositiveParameter,
  AlreadyPure,
  SingularDenominator,
  DegenerateProblem,
  SupportTooLarge,
  BasisAlignmentFailed,
  RateOutOfRange,
  WrongShape,
  BadParameter,
  ParseError,
  UnsolvedCase,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `magnitude()` carries the offending
/// number (an eigenvalue, a norm, a trace deviation) when one exists, NaN
/// otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double magnitude);
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorCode code_;
  double magnitude_;
};

}  // namespace mixest
