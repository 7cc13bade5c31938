#pragma once

#include <cstdint>

#include "rotavg/graph.hpp"
#include "rotavg/random.hpp"

namespace rotavg {

enum class GraphStyle { kSfm, kSlam };

struct SynthSpec {
  int n = 100;
  double target_density = 0.3;
  double sigma = 0.1;  // radians
  GraphStyle style = GraphStyle::kSfm;
  std::uint64_t seed = 0;
};

struct SynthInstance {
  CameraGraph graph;
  RotationStack ground_truth;
  SynthSpec spec;
};

// Largest per-step angle of the SLAM trajectory random walk, radians.
inline constexpr double kSlamStepAngle = 0.1;

// N * R with N about a uniformly random axis by an angle drawn from N(0, sigma^2).
Mat3 perturb_rotation(const Mat3& R, double sigma, Rng& rng);

// SfM: Haar-random rotations, random Hamiltonian cycle plus uniformly random
// extra pairs. SLAM: random-walk trajectory, sequential chain plus offset-w
// pairs (i, i+w) for w = 2, 3, ... with the last offset subsampled to hit the
// edge count exactly. Measurements perturb R_j R_i^T.
// Throws kInvalidArgument for n < 3 / density outside [0,1] / sigma < 0 and
// kInfeasibleDensity when the rounded edge count is out of range.
SynthInstance generate(const SynthSpec& spec);

}  // namespace rotavg
