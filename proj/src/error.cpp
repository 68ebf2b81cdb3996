#include "vspart/error.hpp"

namespace vspart {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ZeroSubspace: return "ZeroSubspace";
    case ErrorCode::NotAComponent: return "NotAComponent";
    case ErrorCode::InvalidSubPartition: return "InvalidSubPartition";
    case ErrorCode::TrivialPartition: return "TrivialPartition";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::BadDimensions: return "BadDimensions";
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::UncoveredCase: return "UncoveredCase";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonCanonicalInput: return "NonCanonicalInput";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace vspart
