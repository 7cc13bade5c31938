#include "rotavg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "rotavg/error.hpp"

namespace rotavg {

Mat3 perturb_rotation(const Mat3& R, double sigma, Rng& rng) {
  if (sigma < 0.0) throw Error(ErrorCode::kInvalidArgument, "sigma must be >= 0");
  if (sigma == 0.0) return R;
  const Vec3 axis = rng.unit_vector();
  const double angle = sigma * rng.normal();
  return axis_angle(axis, angle) * R;
}

namespace {

// Streams of the instance generator; fixed so that adding a stream never
// shifts the others.
enum Stream : std::uint64_t { kTruth = 1, kTopology = 2, kNoise = 3 };

std::vector<std::pair<int, int>> sfm_edges(int n, long long m, Rng& rng) {
  std::vector<int> cycle = rng.permutation(n);
  std::vector<std::pair<int, int>> edges;
  std::vector<char> used(static_cast<std::size_t>(n) * n, 0);
  auto mark = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    used[static_cast<std::size_t>(a) * n + b] = 1;
    edges.emplace_back(a, b);
  };
  for (int t = 0; t < n; ++t) mark(cycle[t], cycle[(t + 1) % n]);

  std::vector<std::pair<int, int>> free;
  free.reserve(static_cast<std::size_t>(n) * (n - 1) / 2 - n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!used[static_cast<std::size_t>(a) * n + b]) free.emplace_back(a, b);
    }
  }
  // Partial Fisher-Yates: the first (m - n) entries are a uniform sample.
  const std::size_t extra = static_cast<std::size_t>(m - n);
  for (std::size_t t = 0; t < extra; ++t) {
    const std::size_t pick = t + static_cast<std::size_t>(rng.below(free.size() - t));
    std::swap(free[t], free[pick]);
    edges.push_back(free[t]);
  }
  return edges;
}

std::vector<std::pair<int, int>> slam_edges(int n, long long m, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  for (int offset = 2; static_cast<long long>(edges.size()) < m && offset < n; ++offset) {
    std::vector<std::pair<int, int>> ring;
    for (int i = 0; i + offset < n; ++i) ring.emplace_back(i, i + offset);
    const long long missing = m - static_cast<long long>(edges.size());
    if (static_cast<long long>(ring.size()) > missing) {
      rng.shuffle(std::span(ring));
      ring.resize(static_cast<std::size_t>(missing));
      std::sort(ring.begin(), ring.end());
    }
    edges.insert(edges.end(), ring.begin(), ring.end());
  }
  return edges;
}

}  // namespace

SynthInstance generate(const SynthSpec& spec) {
  if (spec.n < 3) throw Error(ErrorCode::kInvalidArgument, "synthetic graphs need n >= 3");
  if (!(spec.target_density >= 0.0 && spec.target_density <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "target density must lie in [0, 1]");
  }
  if (!(spec.sigma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be >= 0");

  const long long n = spec.n;
  const long long m = edges_for_density(n, spec.target_density);
  if (m < n || m > n * (n - 1) / 2) {
    throw Error(ErrorCode::kInfeasibleDensity, "rounded edge count outside [n, n(n-1)/2]");
  }

  const Rng root(spec.seed);
  Rng truth_rng = root.split(kTruth);
  Rng topo_rng = root.split(kTopology);
  Rng noise_rng = root.split(kNoise);

  SynthInstance out{CameraGraph(spec.n), RotationStack(static_cast<std::size_t>(n)), spec};
  std::vector<std::pair<int, int>> pairs;
  if (spec.style == GraphStyle::kSfm) {
    for (auto& R : out.ground_truth) R = truth_rng.rotation();
    pairs = sfm_edges(spec.n, m, topo_rng);
  } else {
    out.ground_truth[0] = truth_rng.rotation();
    for (int i = 1; i < spec.n; ++i) {
      const double angle = kSlamStepAngle * truth_rng.uniform();
      out.ground_truth[i] = axis_angle(truth_rng.unit_vector(), angle) * out.ground_truth[i - 1];
    }
    pairs = slam_edges(spec.n, m, topo_rng);
  }
  for (const auto& [i, j] : pairs) {
    const Mat3 relative = out.ground_truth[j] * out.ground_truth[i].transpose();
    out.graph.add_edge(i, j, perturb_rotation(relative, spec.sigma, noise_rng));
  }
  return out;
}

}  // namespace rotavg
