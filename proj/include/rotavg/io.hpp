#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rotavg/graph.hpp"
#include "rotavg/solver.hpp"

namespace rotavg {

enum class GraphFileFormat { kG2o, kNative };

// Throws kUnsupportedFormat for anything other than "g2o" / "native".
GraphFileFormat parse_format_name(const std::string& name);
// From the file extension: ".g2o" is g2o, everything else native.
GraphFileFormat guess_format(const std::string& path);

struct LoadedGraph {
  CameraGraph graph;
  // External id of each vertex; vertex v was `original_ids[v]` in the file.
  std::vector<long long> original_ids;
  int skipped_lines = 0;    // unknown line types
  int duplicate_edges = 0;  // repeated pairs, first occurrence kept
};

// g2o 3D pose-graph subset. EDGE_SE3:QUAT lines contribute their rotation
// (translations and information are ignored); VERTEX_SE3:QUAT lines only
// register ids. The edge quaternion q is the rotation of j in the frame of i,
// so the stored measurement is R(q)^T in the R_j = Rt_ij R_i convention, and
// the absolute rotations solved for are the transposes of g2o vertex
// orientations. Ids are remapped to 0..n-1 in increasing order.
// Throws kMalformedLine, kNonUnitQuaternion (| |q| - 1 | > 1e-3),
// kUnsupportedFormat (2D types), kInvalidGraph (self-loops).
LoadedGraph parse_g2o(std::istream& in);

// Native format:
//   n <count>
//   E <i> <j> <r11> <r12> <r13> <r21> ... <r33>     (0-based, row-major, %.17g)
void write_native(const CameraGraph& graph, std::ostream& out);
// Throws kMalformedLine, kNotARotation, kInvalidGraph.
CameraGraph parse_native(std::istream& in);

// Rotation files (ground truth, solutions):
//   n <count>
//   R <i> <r11> ... <r33>
void write_rotations(const RotationStack& R, std::ostream& out);
RotationStack parse_rotations(std::istream& in);

enum class ResultFormat { kJsonLines, kCsv };

struct ResultRecord {
  const SolveReport* report = nullptr;
  std::vector<long long> camera_ids;  // empty: 0..n-1
  std::string config_json;            // echoed verbatim, "{}" when empty
  bool include_timing = true;         // false writes 0 for all seconds fields
};

// CSV: header `epoch,objective,flips,seconds` then one row per epoch.
// JSON lines: a {"type":"summary",...} record, one {"type":"camera",...}
// record per camera with its unit quaternion, one {"type":"epoch",...} per epoch.
// Objectives are written with 17 significant digits.
void write_results(const ResultRecord& record, std::ostream& out, ResultFormat format);

}  // namespace rotavg
