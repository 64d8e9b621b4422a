#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tunnelmeet {

enum class ErrorCode {
  kInvalidArgument,
  kUnknownNode,
  kInvalidPort,
  kDuplicatePort,
  kDanglingEdge,
  kDisconnected,
  kStepBudgetExceeded,
  kScheduleMismatch,
  kStartNotInterior,
  kNoPath,
  kInvalidTerrain,
  kSchema,
};

std::string_view error_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the
/// message starts with the code name so CLI output stays greppable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tunnelmeet
