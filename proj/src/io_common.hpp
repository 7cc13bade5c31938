#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "rotavg/error.hpp"

namespace rotavg::detail {

inline std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

inline double to_double(std::string_view token, long line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::kMalformedLine,
                "line " + std::to_string(line_no) + ": not a number: '" + std::string(token) + "'",
                line_no);
  }
  return value;
}

inline long long to_integer(std::string_view token, long line_no) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::kMalformedLine,
                "line " + std::to_string(line_no) + ": not an integer: '" + std::string(token) +
                    "'",
                line_no);
  }
  return value;
}

[[noreturn]] inline void malformed(long line_no, const std::string& what) {
  throw Error(ErrorCode::kMalformedLine, "line " + std::to_string(line_no) + ": " + what, line_no);
}

// %.17g: enough digits to round-trip any double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace rotavg::detail
