#include "ahp/error.hpp"

namespace ahp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingPair: return "MissingPair";
    case ErrorCode::DuplicatePair: return "DuplicatePair";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::MissingRI: return "MissingRI";
    case ErrorCode::DegenerateWeights: return "DegenerateWeights";
    case ErrorCode::EmptyPanel: return "EmptyPanel";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::UnknownAlternative: return "UnknownAlternative";
    case ErrorCode::OverlappingGroups: return "OverlappingGroups";
    case ErrorCode::InvalidHierarchy: return "InvalidHierarchy";
    case ErrorCode::PreviousRoundOpen: return "PreviousRoundOpen";
    case ErrorCode::MaxRoundsExceeded: return "MaxRoundsExceeded";
    case ErrorCode::RoundClosed: return "RoundClosed";
    case ErrorCode::UnknownExpert: return "UnknownExpert";
    case ErrorCode::UnknownItem: return "UnknownItem";
    case ErrorCode::NoVotes: return "NoVotes";
    case ErrorCode::NoOpenRound: return "NoOpenRound";
    case ErrorCode::InvalidPanel: return "InvalidPanel";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::VersionUnsupported: return "VersionUnsupported";
    case ErrorCode::BadMagnitude: return "BadMagnitude";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace ahp
