#include "specabs/error.hpp"

namespace specabs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::PartitionMismatch: return "PartitionMismatch";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::TooFewNodes: return "TooFewNodes";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConstantVector: return "ConstantVector";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::NotEnoughSplittableClusters: return "NotEnoughSplittableClusters";
    case ErrorCode::TooFewDistinctPoints: return "TooFewDistinctPoints";
    case ErrorCode::InvalidFractionalExponent: return "InvalidFractionalExponent";
    case ErrorCode::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SpecMonotonicityViolation: return "SpecMonotonicityViolation";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(std::move(detail)) {}

}  // namespace specabs
