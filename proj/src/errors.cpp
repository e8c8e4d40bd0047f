#include "mixest/errors.hpp"

#include <limits>

namespace mixest {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitTrace: return "NotUnitTrace";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::EffectTooLarge: return "EffectTooLarge";
    case ErrorCode::InvalidPovm: return "InvalidPovm";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::VectorTooLong: return "VectorTooLong";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::ZeroMeanPrior: return "ZeroMeanPrior";
    case ErrorCode::InvalidPrior: return "InvalidPrior";
    case ErrorCode::NonUniformPrior: return "NonUniformPrior";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::AlreadyPure: return "AlreadyPure";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::DegenerateProblem: return "DegenerateProblem";
    case ErrorCode::SupportTooLarge: return "SupportTooLarge";
    case ErrorCode::BasisAlignmentFailed: return "BasisAlignmentFailed";
    case ErrorCode::RateOutOfRange: return "RateOutOfRange";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsolvedCase: return "UnsolvedCase";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what, double magnitude)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      magnitude_(magnitude) {}

Error::Error(ErrorCode code, const std::string& what)
    : Error(code, what, std::numeric_limits<double>::quiet_NaN()) {}

}  // namespace mixest
