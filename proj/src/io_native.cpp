#include <istream>
#include <ostream>
#include <string>

#include "io_common.hpp"
#include "rotavg/io.hpp"

namespace rotavg {

GraphFileFormat parse_format_name(const std::string& name) {
  if (name == "g2o") return GraphFileFormat::kG2o;
  if (name == "native") return GraphFileFormat::kNative;
  throw Error(ErrorCode::kUnsupportedFormat, "unknown graph format '" + name + "'");
}

GraphFileFormat guess_format(const std::string& path) {
  return path.ends_with(".g2o") ? GraphFileFormat::kG2o : GraphFileFormat::kNative;
}

namespace {

void write_block(std::ostream& out, const Mat3& R) {
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out << ' ' << detail::format_double(R(r, c));
  }
}

Mat3 read_block(const std::vector<std::string_view>& tokens, std::size_t first, long line_no) {
  Mat3 R;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) R(r, c) = detail::to_double(tokens[first + 3 * r + c], line_no);
  }
  return R;
}

// Reads the "n <count>" header; returns the count. Skips blank lines.
int read_header(std::istream& in, long& line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2 || tokens[0] != "n") detail::malformed(line_no, "expected 'n <count>'");
    const long long n = detail::to_integer(tokens[1], line_no);
    if (n < 0 || n > (1LL << 30)) detail::malformed(line_no, "invalid vertex count");
    return static_cast<int>(n);
  }
  detail::malformed(line_no + 1, "missing 'n <count>' header");
}

}  // namespace

void write_native(const CameraGraph& graph, std::ostream& out) {
  out << "n " << graph.num_vertices() << '\n';
  for (const auto& e : graph.edges()) {
    out << "E " << e.i << ' ' << e.j;
    write_block(out, e.rotation);
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoFailure, "failed to write graph");
}

CameraGraph parse_native(std::istream& in) {
  long line_no = 0;
  CameraGraph graph(read_header(in, line_no));
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0] != "E" || tokens.size() != 12) {
      detail::malformed(line_no, "expected 'E i j r11 ... r33'");
    }
    const long long i = detail::to_integer(tokens[1], line_no);
    const long long j = detail::to_integer(tokens[2], line_no);
    const Mat3 R = read_block(tokens, 3, line_no);
    if (!is_rotation(R, 1e-9)) {
      throw Error(ErrorCode::kNotARotation,
                  "line " + std::to_string(line_no) + ": edge (" + std::to_string(i) + "," +
                      std::to_string(j) + ") is not a rotation",
                  line_no);
    }
    try {
      graph.add_edge(static_cast<int>(i), static_cast<int>(j), R);
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return graph;
}

void write_rotations(const RotationStack& R, std::ostream& out) {
  out << "n " << R.size() << '\n';
  for (std::size_t i = 0; i < R.size(); ++i) {
    out << "R " << i;
    write_block(out, R[i]);
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoFailure, "failed to write rotations");
}

RotationStack parse_rotations(std::istream& in) {
  long line_no = 0;
  const int n = read_header(in, line_no);
  RotationStack R(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0] != "R" || tokens.size() != 11) detail::malformed(line_no, "expected 'R i r11 ... r33'");
    const long long i = detail::to_integer(tokens[1], line_no);
    if (i < 0 || i >= n || seen[i]) detail::malformed(line_no, "invalid or repeated rotation index");
    R[i] = read_block(tokens, 2, line_no);
    if (!is_rotation(R[i], 1e-9)) {
      throw Error(ErrorCode::kNotARotation,
                  "line " + std::to_string(line_no) + ": block " + std::to_string(i) +
                      " is not a rotation",
                  line_no);
    }
    seen[i] = 1;
  }
  for (int i = 0; i < n; ++i) {
    if (!seen[i]) detail::malformed(line_no, "rotation " + std::to_string(i) + " missing");
  }
  return R;
}

}  // namespace rotavg
