#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specabs {

enum class ErrorCode {
  DuplicateLabel,
  DuplicateEdge,
  SelfLoop,
  NonpositiveWeight,
  IndexOutOfRange,
  EmptySubset,
  PartitionMismatch,
  InvalidProbability,
  InvalidPartition,
  NotSymmetric,
  ConvergenceFailure,
  ZeroVector,
  TooFewNodes,
  DisconnectedGraph,
  DimensionOutOfRange,
  DimensionMismatch,
  ConstantVector,
  KOutOfRange,
  NotEnoughSplittableClusters,
  TooFewDistinctPoints,
  InvalidFractionalExponent,
  ExponentOutOfRange,
  InvalidArgument,
  SpecMonotonicityViolation,
  LevelOutOfRange,
  DegenerateVariance,
  ParseError,
  AsymmetricMatrix,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library is reported as an Error carrying a stable,
/// machine-readable code plus a human-readable detail string.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace specabs
