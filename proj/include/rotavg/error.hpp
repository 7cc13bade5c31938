#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rotavg {

enum class ErrorCode {
  kNotSymmetric,
  kIndefiniteInput,
  kDegenerateInput,
  kZeroQuaternion,
  kNonUnitQuaternion,
  kInvalidGraph,
  kIndexOutOfRange,
  kOutOfRange,
  kDisconnected,
  kIsolatedVertex,
  kNumericalBreakdown,
  kNotRankThree,
  kDivisionByZero,
  kInfeasibleDensity,
  kInvalidArgument,
  kMalformedLine,
  kNotARotation,
  kUnsupportedFormat,
  kIoFailure,
};

// Stable name used in error records and CLI output, e.g. "Disconnected".
std::string_view error_name(ErrorCode code);

// True for failures that come from the numerics rather than from the input data.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, long line = 0)
      : std::runtime_error(message), code_(code), line_(line) {}

  ErrorCode code() const { return code_; }
  // 1-based input line for parse errors, 0 otherwise.
  long line() const { return line_; }

 private:
  ErrorCode code_;
  long line_;
};

}  // namespace rotavg
