#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "rotavg/so3.hpp"

namespace rotavg {

// Absolute rotations R_0..R_{n-1}; the 3n x 3 stacked variable of the problem.
using RotationStack = std::vector<Mat3>;

// Relative measurement for i < j following R_j = rotation * R_i.
struct Edge {
  int i = 0;
  int j = 0;
  Mat3 rotation = Mat3::Identity();
};

// Undirected camera graph with vertices 0..n-1.
//
// add_edge canonicalises to i < j (storing the transpose when the input pair
// is reversed) and rejects self-loops, duplicates and out-of-range ids with
// kInvalidGraph.
class CameraGraph {
 public:
  CameraGraph() = default;
  explicit CameraGraph(int num_vertices);

  void add_edge(int i, int j, const Mat3& rotation);
  bool has_edge(int i, int j) const;

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::vector<int> degrees() const;
  std::vector<std::vector<int>> adjacency() const;

 private:
  static std::uint64_t key(int i, int j);

  int n_ = 0;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> keys_;
};

// One nonzero block of a block column: block (row, k) of the measurement matrix.
struct BlockEntry {
  int row = 0;
  Mat3 block = Mat3::Zero();
};

// Sparse view of block column k. Blocks not listed (including block k) are zero.
struct BlockColumn {
  int index = 0;
  int size = 0;
  std::span<const BlockEntry> entries;
};

// Block-symmetric 3n x 3n matrix with block (i, j) = Q^T and block (j, i) = Q
// for each edge (i < j, Q). Stored as per-vertex adjacency lists so that
// column(k) is O(deg(k)).
class MeasurementMatrix {
 public:
  explicit MeasurementMatrix(const CameraGraph& graph);

  int size() const { return n_; }
  std::size_t num_edges() const { return m_; }
  std::size_t num_blocks() const;

  // Throws kIndexOutOfRange.
  BlockColumn column(int k) const;
  int degree(int k) const { return static_cast<int>(columns_.at(k).size()); }

  // Block (a, b); zero when absent.
  Mat3 block(int a, int b) const;

  // Dense 3n x 3n form, for tests and small diagnostics only.
  Eigen::MatrixXd dense() const;

 private:
  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<BlockEntry>> columns_;  // sorted by row
};

MeasurementMatrix build_measurement_matrix(const CameraGraph& graph);

// (m - n) / (n(n-1)/2 - n): 0 for a cycle, 1 for the complete graph.
// Throws kOutOfRange for n < 3 or m outside [n, n(n-1)/2].
double graph_density(long long n, long long m);

// Edge count for a target density, round(n + d * (n(n-1)/2 - n)).
long long edges_for_density(long long n, double density);

bool check_connected(const CameraGraph& graph);

// Rotations chained along a random spanning tree rooted at vertex 0 (R_0 = I).
// The tree comes from a search with seeded random edge priorities.
// Throws kDisconnected.
RotationStack spanning_tree_init(const CameraGraph& graph, std::uint64_t seed);

struct AlphaMaxReport {
  double fiedler_value = 0.0;
  int max_degree = 0;
  // 2 asin(sqrt(1/4 + lambda_2 / (2 d_max)) - 1/2)
  double fiedler_bound = 0.0;
  bool is_cycle = false;
  // pi / n on a simple cycle, fiedler_bound otherwise.
  double alpha_max = 0.0;
};

// Residual bound under which the relaxation is tight. Dense eigensolve of the
// Laplacian, intended for graphs up to a few thousand vertices.
// Throws kDisconnected.
AlphaMaxReport alpha_max_report(const CameraGraph& graph);
double alpha_max(const CameraGraph& graph);

}  // namespace rotavg
