#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bongard {

enum class ErrorCode {
  MissingFile,
  DimensionMismatch,
  MalformedFormat,
  InvalidTarget,
  InvalidArgument,
  UnsatisfiableConcept,
  OutOfCanvas,
  NoGroundTruth,
  EpisodeFinished,
  InsufficientData,
  EmptyHistoryDomain,
  InfeasibleDistribution,
  CrossedInterval,
  StaleCache,
  ShapeMismatch,
  EmptyBatch,
  ConfigError,
  IoError,
  CheckpointVersionMismatch,
  InconsistentRuns,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bongard
