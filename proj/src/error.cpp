#include "tunnelmeet/error.hpp"

namespace tunnelmeet {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kInvalidPort: return "InvalidPort";
    case ErrorCode::kDuplicatePort: return "DuplicatePort";
    case ErrorCode::kDanglingEdge: return "DanglingEdge";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kStepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::kScheduleMismatch: return "ScheduleMismatch";
    case ErrorCode::kStartNotInterior: return "StartNotInterior";
    case ErrorCode::kNoPath: return "NoPath";
    case ErrorCode::kInvalidTerrain: return "InvalidTerrain";
    case ErrorCode::kSchema: return "Schema";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

}  // namespace tunnelmeet
