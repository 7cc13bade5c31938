#include <algorithm>
#include <cmath>
#include <istream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "io_common.hpp"
#include "rotavg/io.hpp"

namespace rotavg {

namespace {

constexpr std::size_t kVertexTokens = 9;   // tag id x y z qx qy qz qw
constexpr std::size_t kEdgeTokens = 31;    // tag i j t(3) q(4) information(21)

struct RawEdge {
  long long a;
  long long b;
  Mat3 rotation;
};

}  // namespace

LoadedGraph parse_g2o(std::istream& in) {
  LoadedGraph out;
  std::vector<long long> ids;
  std::vector<RawEdge> raw;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = detail::tokenize(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    const std::string_view tag = tokens[0];

    if (tag == "VERTEX_SE3:QUAT") {
      if (tokens.size() != kVertexTokens) {
        detail::malformed(line_no, "VERTEX_SE3:QUAT expects 8 fields");
      }
      ids.push_back(detail::to_integer(tokens[1], line_no));
      for (std::size_t t = 2; t < kVertexTokens; ++t) detail::to_double(tokens[t], line_no);
    } else if (tag == "EDGE_SE3:QUAT") {
      if (tokens.size() != kEdgeTokens) {
        detail::malformed(line_no, "EDGE_SE3:QUAT expects 30 fields");
      }
      const long long a = detail::to_integer(tokens[1], line_no);
      const long long b = detail::to_integer(tokens[2], line_no);
      double values[kEdgeTokens];
      for (std::size_t t = 3; t < kEdgeTokens; ++t) values[t] = detail::to_double(tokens[t], line_no);
      const UnitQuaternion q{values[6], values[7], values[8], values[9]};
      const double norm = std::sqrt(q.qx * q.qx + q.qy * q.qy + q.qz * q.qz + q.qw * q.qw);
      if (std::abs(norm - 1.0) > 1e-3) {
        throw Error(ErrorCode::kNonUnitQuaternion,
                    "line " + std::to_string(line_no) + ": quaternion norm " + std::to_string(norm),
                    line_no);
      }
      if (a == b) {
        throw Error(ErrorCode::kInvalidGraph,
                    "line " + std::to_string(line_no) + ": self-loop edge", line_no);
      }
      // g2o stores the pose of b in the frame of a; the model wants R_b = Rt R_a
      // on camera (world-to-body) rotations, which is the transpose.
      raw.push_back({a, b, quat_to_rotation(q).transpose()});
      ids.push_back(a);
      ids.push_back(b);
    } else if (tag.starts_with("EDGE_SE2") || tag.starts_with("VERTEX_SE2")) {
      throw Error(ErrorCode::kUnsupportedFormat,
                  "line " + std::to_string(line_no) + ": 2D g2o types are not supported", line_no);
    } else {
      ++out.skipped_lines;
    }
  }

  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<long long, int> index;
  for (std::size_t v = 0; v < ids.size(); ++v) index[ids[v]] = static_cast<int>(v);

  out.graph = CameraGraph(static_cast<int>(ids.size()));
  out.original_ids = ids;
  for (const auto& e : raw) {
    const int i = index.at(e.a);
    const int j = index.at(e.b);
    if (out.graph.has_edge(i, j)) {
      ++out.duplicate_edges;
      continue;
    }
    out.graph.add_edge(i, j, e.rotation);
  }
  return out;
}

}  // namespace rotavg
