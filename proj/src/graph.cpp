#include "rotavg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>



#include "rotavg/eigen.hpp"
#include "rotavg/error.hpp"

namespace rotavg {

CameraGraph::CameraGraph(int num_vertices) : n_(num_vertices) {
  if (num_vertices < 0) throw Error(ErrorCode::kInvalidGraph, "negative vertex count");
}

std::uint64_t CameraGraph::key(int i, int j) {
  return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
}

void CameraGraph::add_edge(int i, int j, const Mat3& rotation) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw Error(ErrorCode::kInvalidGraph,
                "edge (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  }
  if (i == j) {
    throw Error(ErrorCode::kInvalidGraph, "self-loop at vertex " + std::to_string(i));
  }
  Edge e{i, j, rotation};
  if (i > j) e = Edge{j, i, rotation.transpose()};
  const std::uint64_t k = key(e.i, e.j);
  if (!keys_.insert(k).second) {
    throw Error(ErrorCode::kInvalidGraph,
                "duplicate edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ")");
  }
  edges_.push_back(e);
}

bool CameraGraph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return keys_.contains(key(i, j));
}

std::vector<int> CameraGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_), 0);
  for (const auto& e : edges_) {
    ++deg[e.i];
    ++deg[e.j];
  }
  return deg;
}

std::vector<std::vector<int>> CameraGraph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
  for (const auto& e : edges_) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

MeasurementMatrix::MeasurementMatrix(const CameraGraph& graph)
    : n_(graph.num_vertices()), m_(graph.num_edges()), columns_(graph.num_vertices()) {
  for (const auto& e : graph.edges()) {
    // block(i, j) = Q^T sits in column j; block(j, i) = Q sits in column i.
    columns_[e.j].push_back({e.i, e.rotation.transpose()});
    columns_[e.i].push_back({e.j, e.rotation});
  }
  for (auto& col : columns_) {
    std::sort(col.begin(), col.end(),
              [](const BlockEntry& a, const BlockEntry& b) { return a.row < b.row; });
  }
}

std::size_t MeasurementMatrix::num_blocks() const { return 2 * m_; }

BlockColumn MeasurementMatrix::column(int k) const {
  if (k < 0 || k >= n_) {
    throw Error(ErrorCode::kIndexOutOfRange, "column index " + std::to_string(k) + " out of range");
  }
  return {k, n_, columns_[k]};
}

Mat3 MeasurementMatrix::block(int a, int b) const {
  const auto& col = columns_.at(b);
  auto it = std::lower_bound(col.begin(), col.end(), a,
                             [](const BlockEntry& e, int row) { return e.row < row; });
  if (it != col.end() && it->row == a) return it->block;
  return Mat3::Zero();
}

Eigen::MatrixXd MeasurementMatrix::dense() const {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(3 * n_, 3 * n_);
  for (int k = 0; k < n_; ++k) {
    for (const auto& e : columns_[k]) D.block<3, 3>(3 * e.row, 3 * k) = e.block;
  }
  return D;
}

MeasurementMatrix build_measurement_matrix(const CameraGraph& graph) {
  return MeasurementMatrix(graph);
}

double graph_density(long long n, long long m) {
  if (n < 3) throw Error(ErrorCode::kOutOfRange, "graph density needs n >= 3");
  const long long e_min = n;
  const long long e_max = n * (n - 1) / 2;
  if (m < e_min || m > e_max) {
    throw Error(ErrorCode::kOutOfRange, "edge count " + std::to_string(m) +
                                            " outside [" + std::to_string(e_min) + ", " +
                                            std::to_string(e_max) + "]");
  }
  if (e_max == e_min) return 1.0;  // n = 3: the cycle is complete
  return static_cast<double>(m - e_min) / static_cast<double>(e_max - e_min);
}

long long edges_for_density(long long n, double density) {
  const long long e_min = n;
  const long long e_max = n * (n - 1) / 2;
  return e_min + std::llround(density * static_cast<double>(e_max - e_min));
}

bool check_connected(const CameraGraph& graph) {
  const int n = graph.num_vertices();
  if (n <= 1) return true;
  const auto adj = graph.adjacency();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

AlphaMaxReport alpha_max_report(const CameraGraph& graph) {
  const int n = graph.num_vertices();
  if (n < 2 || !check_connected(graph)) {
    throw Error(ErrorCode::kDisconnected, "alpha_max needs a connected graph with n >= 2");
  }
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : graph.edges()) {
    L(e.i, e.j) -= 1.0;
    L(e.j, e.i) -= 1.0;
    L(e.i, e.i) += 1.0;
    L(e.j, e.j) += 1.0;
  }
  AlphaMaxReport r;
  r.fiedler_value = symmetric_eigenvalues(L)[1];
  const auto deg = graph.degrees();
  r.max_degree = *std::max_element(deg.begin(), deg.end());
  const double inner =
      std::sqrt(0.25 + r.fiedler_value / (2.0 * r.max_degree)) - 0.5;
  r.fiedler_bound = 2.0 * std::asin(std::clamp(inner, 0.0, 1.0));
  r.is_cycle = n >= 3 && static_cast<int>(graph.num_edges()) == n &&
               std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; });
  r.alpha_max = r.is_cycle ? std::numbers::pi / n : r.fiedler_bound;
  return r;
}

double alpha_max(const CameraGraph& graph) { return alpha_max_report(graph).alpha_max; }

}  // namespace rotavg
