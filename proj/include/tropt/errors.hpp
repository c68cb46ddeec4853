#pragma once

#include <stdexcept>
#include <string>

namespace tropt {

/// Error taxonomy shared by the whole library. Every throwing operation
/// reports one of these codes so callers can react without string matching.
enum class ErrorCode {
  // scalars
  ParseError,
  ZeroDenominator,
  DivisionByZero,
  InverseOfZero,
  ZeroToNonpositivePower,
  // matrices and vectors
  ShapeMismatch,
  NotSquare,
  AllZeroMatrix,
  ZeroVector,
  StarDiverges,
  NotColumnRegular,
  IrregularBound,
  IrregularVector,
  ParameterBelowBound,
  // bi-objective problem
  InfeasibleBox,
  DegenerateObjective,
  ZeroArgument,
  AlphaOutOfRange,
  ParameterOutOfBox,
  // scheduling
  InfeasibleReleaseWindow,
  InfeasibleDeadline,
  DanglingActivity,
  BothOrNeitherDeadlineKind,
  WrongDeadlineKind,
  IrregularDeadline,
  NonFiniteEntry,
  StartTimeOutOfWindow,
  FinishAfterDeadline,
  // verification
  GridTooLarge,
  OrderTooLarge,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InverseOfZero: return "InverseOfZero";
    case ErrorCode::ZeroToNonpositivePower: return "ZeroToNonpositivePower";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::AllZeroMatrix: return "AllZeroMatrix";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::StarDiverges: return "StarDiverges";
    case ErrorCode::NotColumnRegular: return "NotColumnRegular";
    case ErrorCode::IrregularBound: return "IrregularBound";
    case ErrorCode::IrregularVector: return "IrregularVector";
    case ErrorCode::ParameterBelowBound: return "ParameterBelowBound";
    case ErrorCode::InfeasibleBox: return "InfeasibleBox";
    case ErrorCode::DegenerateObjective: return "DegenerateObjective";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::ParameterOutOfBox: return "ParameterOutOfBox";
    case ErrorCode::InfeasibleReleaseWindow: return "InfeasibleReleaseWindow";
    case ErrorCode::InfeasibleDeadline: return "InfeasibleDeadline";
    case ErrorCode::DanglingActivity: return "DanglingActivity";
    case ErrorCode::BothOrNeitherDeadlineKind: return "BothOrNeitherDeadlineKind";
    case ErrorCode::WrongDeadlineKind: return "WrongDeadlineKind";
    case ErrorCode::IrregularDeadline: return "IrregularDeadline";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::StartTimeOutOfWindow: return "StartTimeOutOfWindow";
    case ErrorCode::FinishAfterDeadline: return "FinishAfterDeadline";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tropt
