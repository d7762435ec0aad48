#include "bongard/error.hpp"

namespace bongard {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MalformedFormat: return "MalformedFormat";
    case ErrorCode::InvalidTarget: return "InvalidTarget";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsatisfiableConcept: return "UnsatisfiableConcept";
    case ErrorCode::OutOfCanvas: return "OutOfCanvas";
    case ErrorCode::NoGroundTruth: return "NoGroundTruth";
    case ErrorCode::EpisodeFinished: return "EpisodeFinished";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::EmptyHistoryDomain: return "EmptyHistoryDomain";
    case ErrorCode::InfeasibleDistribution: return "InfeasibleDistribution";
    case ErrorCode::CrossedInterval: return "CrossedInterval";
    case ErrorCode::StaleCache: return "StaleCache";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::EmptyBatch: return "EmptyBatch";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::CheckpointVersionMismatch: return "CheckpointVersionMismatch";
    case ErrorCode::InconsistentRuns: return "InconsistentRuns";
  }
  return "Unknown";
}

}  // namespace bongard
