#include "dendrolim/error.hpp"

namespace dendrolim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::HasCycle: return "HasCycle";
    case ErrorCode::BadEdgeIndex: return "BadEdgeIndex";
    case ErrorCode::BadEdgeLength: return "BadEdgeLength";
    case ErrorCode::TrivialTree: return "TrivialTree";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::InvalidMeasure: return "InvalidMeasure";
    case ErrorCode::InvalidComponent: return "InvalidComponent";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::WeightsNotNormalized: return "WeightsNotNormalized";
    case ErrorCode::BranchWithZeroMass: return "BranchWithZeroMass";
    case ErrorCode::NotAtomic: return "NotAtomic";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::DiameterTooLarge: return "DiameterTooLarge";
    case ErrorCode::TooManyAtoms: return "TooManyAtoms";
    case ErrorCode::NotSpanned: return "NotSpanned";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::UnsupportedRegion: return "UnsupportedRegion";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::NotATreeMetric: return "NotATreeMetric";
    case ErrorCode::NegativeGromovProduct: return "NegativeGromovProduct";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  return code == ErrorCode::NotATreeMetric || code == ErrorCode::NegativeGromovProduct;
}

void throw_if_any(const Issues& issues) {
  if (!issues.empty()) throw Error(issues.front().code, issues.front().message);
}

}  // namespace dendrolim
