#include "rotavg/error.hpp"

namespace rotavg {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kIndefiniteInput: return "IndefiniteInput";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kZeroQuaternion: return "ZeroQuaternion";
    case ErrorCode::kNonUnitQuaternion: return "NonUnitQuaternion";
    case ErrorCode::kInvalidGraph: return "InvalidGraph";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kIsolatedVertex: return "IsolatedVertex";
    case ErrorCode::kNumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::kNotRankThree: return "NotRankThree";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kInfeasibleDensity: return "InfeasibleDensity";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kNotARotation: return "NotARotation";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kIoFailure: return "IoFailure";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSymmetric:
    case ErrorCode::kIndefiniteInput:
    case ErrorCode::kDegenerateInput:
    case ErrorCode::kNumericalBreakdown:
    case ErrorCode::kNotRankThree:
    case ErrorCode::kDivisionByZero:
      return true;
    default:
      return false;
  }
}

}  // namespace rotavg
