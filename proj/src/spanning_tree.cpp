#include <queue>
#include <tuple>

#include "rotavg/error.hpp"
#include "rotavg/graph.hpp"
#include "rotavg/random.hpp"

namespace rotavg {

RotationStack spanning_tree_init(const CameraGraph& graph, std::uint64_t seed) {
  const int n = graph.num_vertices();
  if (!check_connected(graph)) {
    throw Error(ErrorCode::kDisconnected, "spanning tree of a disconnected graph");
  }
  RotationStack R(static_cast<std::size_t>(n), Mat3::Identity());
  if (n == 0) return R;

  // Prim's search with random edge priorities.
  Rng rng(seed);
  std::vector<std::uint64_t> priority(graph.num_edges());
  for (auto& p : priority) p = rng.next();

  struct Incidence {
    int edge;
    int other;
  };
  std::vector<std::vector<Incidence>> incident(static_cast<std::size_t>(n));
  const auto& edges = graph.edges();
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    incident[edges[e].i].push_back({e, edges[e].j});
    incident[edges[e].j].push_back({e, edges[e].i});
  }

  using Item = std::tuple<std::uint64_t, int, int>;  // priority, edge, parent
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  auto expand = [&](int v) {
    in_tree[v] = 1;
    for (const auto& inc : incident[v]) {
      if (!in_tree[inc.other]) frontier.emplace(priority[inc.edge], inc.edge, v);
    }
  };
  expand(0);
  while (!frontier.empty()) {
    const auto [p, e, parent] = frontier.top();
    frontier.pop();
    const Edge& edge = edges[e];
    const int child = edge.i == parent ? edge.j : edge.i;
    if (in_tree[child]) continue;
    // R_j = Q_ij R_i along the stored orientation, R_i = Q_ij^T R_j against it.
    R[child] = (edge.i == parent ? edge.rotation : Mat3(edge.rotation.transpose())) * R[parent];
    expand(child);
  }
  return R;
}

}  // namespace rotavg
