#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rotavg::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kDataError = 2;
inline constexpr int kNumericalError = 3;

// Runs one invocation; args excludes the program name. Errors are reported to
// `err` as a single JSON object {"error": <name>, "message": ..., "line": ...}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace rotavg::cli
