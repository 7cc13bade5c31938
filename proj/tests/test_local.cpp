#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "rotavg/error.hpp"
#include "rotavg/local.hpp"
#include "rotavg/random.hpp"
#include "rotavg/synth.hpp"
#include "test_util.hpp"

namespace rotavg {
namespace {

TEST(LocalRefine, FixedPointAtNoiselessTruth) {
  const SynthInstance inst = generate({30, 0.2, 0.0, GraphStyle::kSfm, 4});
  const MeasurementMatrix M(inst.graph);
  const RotationStack out = local_refine(inst.ground_truth, M, LocalConfig{});
  for (int i = 0; i < 30; ++i) EXPECT_MAT_NEAR(out[i], inst.ground_truth[i], 1e-12);
}

TEST(LocalRefine, SingleEdgeReachesOptimum) {
  CameraGraph g(2);
  g.add_edge(0, 1, rot_z(0.2));
  const MeasurementMatrix M(g);
  LocalConfig cfg;
  cfg.sweeps = 1;
  const RotationStack out = local_refine(identity_stack(2), M, cfg);
  // Vertex 0 sees Q^T I... its optimum given R_1 = I is Q^T, then vertex 1 follows.
  EXPECT_NEAR(chordal_cost(out, M), 0.0, 1e-20);
  EXPECT_MAT_NEAR(out[1] * out[0].transpose(), rot_z(0.2), 1e-12);
}

TEST(LocalRefine, VertexUpdateIsTheClosedFormOptimum) {
  // Only the second vertex moves when the first already agrees with the edge.
  CameraGraph g(2);
  g.add_edge(0, 1, rot_z(0.2));
  const MeasurementMatrix M(g);
  RotationStack R = identity_stack(2);
  R[1] = Mat3::Identity();
  // Sum for vertex 1 is block(1,0) R_0 = Q: project(Q) = Q.
  Mat3 sum = Mat3::Zero();
  for (const auto& e : M.column(1).entries) sum += e.block.transpose() * R[e.row];
  EXPECT_MAT_NEAR(project_to_rotation(sum), rot_z(0.2), 1e-12);
}

// Oracle: brute force over the z-angle of the centre for the two-term cost.
TEST(LocalRefine, StarCentreBalancesConflictingLeaves) {
  CameraGraph g(3);
  // Leaves 1 and 2 are fixed at identity; they imply the centre at Rz(+0.4) and Rz(-0.4).
  g.add_edge(0, 1, rot_z(-0.4));  // R_1 = Q R_0 with R_1 = I gives R_0 = Rz(0.4)
  g.add_edge(0, 2, rot_z(0.4));
  const MeasurementMatrix M(g);

  double best_cost = 1e300, best_angle = 0.0;
  for (int t = -4000; t <= 4000; ++t) {
    const double angle = t * 1e-4;
    RotationStack R = identity_stack(3);
    R[0] = rot_z(angle);
    const double c = chordal_cost(R, M);
    if (c < best_cost) {
      best_cost = c;
      best_angle = angle;
    }
  }
  EXPECT_NEAR(best_angle, 0.0, 1e-4);

  Mat3 sum = Mat3::Zero();
  const RotationStack start = identity_stack(3);
  for (const auto& e : M.column(0).entries) sum += e.block.transpose() * start[e.row];
  EXPECT_MAT_NEAR(project_to_rotation(sum), Mat3::Identity(), 1e-9);
}

TEST(LocalRefine, SingleVertexUpdatesNeverIncreaseCost) {
  const SynthInstance inst = generate({40, 0.15, 0.3, GraphStyle::kSfm, 5});
  const MeasurementMatrix M(inst.graph);
  RotationStack R = random_stack(40, 2);
  for (int sweep = 0; sweep < 3; ++sweep) {
    for (int v = 0; v < 40; ++v) {
      const double before = chordal_cost(R, M);
      Mat3 sum = Mat3::Zero();
      for (const auto& e : M.column(v).entries) sum += e.block.transpose() * R[e.row];
      R[v] = project_to_rotation(sum);
      EXPECT_LE(chordal_cost(R, M), before + 1e-10);
    }
  }
  // Whole sweeps agree with the library routine.
  LocalConfig cfg;
  cfg.sweeps = 3;
  cfg.tolerance = 0.0;
  const RotationStack lib = local_refine(random_stack(40, 2), M, cfg);
  for (int i = 0; i < 40; ++i) EXPECT_MAT_NEAR(lib[i], R[i], 1e-12);
}

TEST(LocalRefine, IdempotentAtItsFixedPoint) {
  const SynthInstance inst = generate({30, 0.3, 0.1, GraphStyle::kSfm, 6});
  const MeasurementMatrix M(inst.graph);
  LocalConfig cfg;
  cfg.sweeps = 2000;
  cfg.tolerance = 0.0;
  const RotationStack once = local_refine(spanning_tree_init(inst.graph, 1), M, cfg);
  const RotationStack twice = local_refine(once, M, cfg);
  EXPECT_LT(std::abs(objective(twice, M) - objective(once, M)), 1e-12 * std::abs(objective(once, M)) + 1e-12);
}

TEST(LocalRefine, RejectsZeroSweeps) {
  const SynthInstance inst = generate({5, 1.0, 0.1, GraphStyle::kSfm, 1});
  LocalConfig cfg;
  cfg.sweeps = 0;
  EXPECT_THROW(local_refine(identity_stack(5), MeasurementMatrix(inst.graph), cfg), Error);
}

// Independent simulation of the delay schedule: attempt when s == 0 or
// e mod s == 0, grow s by 2 after every rejected attempt.
std::vector<int> simulate_schedule(int epochs, const std::vector<bool>& accept_pattern) {
  std::vector<int> attempts;
  int s = 0;
  std::size_t call = 0;
  for (int e = 0; e < epochs; ++e) {
    if (s == 0 || e % s == 0) {
      attempts.push_back(e);
      const bool ok = call < accept_pattern.size() ? accept_pattern[call] : false;
      ++call;
      if (!ok) s += 2;
    }
  }
  return attempts;
}

TEST(RcdlSolve, DelayScheduleWithFailingLocalMethod) {
  const SynthInstance inst = generate({30, 0.05, 0.3, GraphStyle::kSlam, 3});
  const MeasurementMatrix M(inst.graph);
  SolveConfig cfg;
  cfg.tolerance = 1e-300;
  cfg.max_epochs = 20;
  const LocalMethod fail = [](const RotationStack& R, const MeasurementMatrix&) { return R; };
  const SolveReport rep = rcdl_solve(M, random_stack(30, 1), cfg, fail);
  ASSERT_EQ(rep.epochs, 20);

  std::vector<int> attempted;
  int previous_delay = -1;
  for (const auto& a : rep.local_attempts) {
    attempted.push_back(a.epoch);
    EXPECT_FALSE(a.accepted);
    EXPECT_EQ(a.delay % 2, 0);
    EXPECT_GT(a.delay, previous_delay);
    previous_delay = a.delay;
  }
  EXPECT_EQ(attempted, simulate_schedule(20, {}));
  // First attempts: e = 0 with s = 0, then e = 2 with s = 2, e = 4 with s = 4.
  ASSERT_GE(rep.local_attempts.size(), 3u);
  EXPECT_EQ(rep.local_attempts[0].delay, 0);
  EXPECT_EQ(rep.local_attempts[1].epoch, 2);
  EXPECT_EQ(rep.local_attempts[2].epoch, 4);
  EXPECT_EQ(rep.local_attempts[2].delay, 4);
}

TEST(RcdlSolve, DelayScheduleWithMixedOutcomes) {
  const SynthInstance inst = generate({30, 0.05, 0.3, GraphStyle::kSlam, 4});
  const MeasurementMatrix M(inst.graph);
  SolveConfig cfg;
  cfg.tolerance = 1e-300;
  cfg.max_epochs = 30;
  // Accept on calls 0 and 2, reject otherwise. Acceptance needs a strict
  // decrease, so an accepting stub does one real Gauss-Seidel pass.
  const std::vector<bool> pattern = {true, false, true, false, false};
  int call = 0;
  const LocalMethod stub = [&](const RotationStack& R, const MeasurementMatrix& A) {
    const bool ok = call < static_cast<int>(pattern.size()) && pattern[call];
    ++call;
    if (!ok) return R;
    LocalConfig one;
    one.sweeps = 1;
    return local_refine(R, A, one);
  };
  const SolveReport rep = rcdl_solve(M, random_stack(30, 2), cfg, stub);
  std::vector<int> attempted;
  for (std::size_t t = 0; t < rep.local_attempts.size(); ++t) {
    attempted.push_back(rep.local_attempts[t].epoch);
    const bool expected = t < pattern.size() && pattern[t];
    EXPECT_EQ(rep.local_attempts[t].accepted, expected) << "attempt " << t;
  }
  EXPECT_EQ(attempted, simulate_schedule(rep.epochs, pattern));
}

TEST(RcdlSolve, EpochBoundaryObjectiveNonIncreasingWhenLocalRuns) {
  const SynthInstance inst = generate({80, 0.02, 0.1, GraphStyle::kSlam, 7});
  const MeasurementMatrix M(inst.graph);
  const SolveReport rep = rcdl_solve(M, spanning_tree_init(inst.graph, 1), SolveConfig{}, LocalConfig{});
  for (const auto& a : rep.local_attempts) {
    if (a.accepted) EXPECT_LT(a.objective_after, a.objective_before);
  }
  for (std::size_t e = 1; e < rep.objective_trace.size(); ++e) {
    EXPECT_LE(rep.objective_trace[e], rep.objective_trace[e - 1] + 1e-9 * std::abs(rep.objective_trace[e - 1]));
  }
  for (const auto& R : rep.rotations) EXPECT_TRUE(is_rotation(R, 1e-9));
}

TEST(RcdlSolve, NoiselessConvergesInTwoEpochs) {
  // Spanning-tree start on noiseless data is already optimal.
  for (auto style : {GraphStyle::kSfm, GraphStyle::kSlam}) {
    const SynthInstance inst = generate({60, 0.05, 0.0, style, 9});
    const MeasurementMatrix M(inst.graph);
    SolveConfig cfg;
    cfg.tolerance = 1e-12;
    const SolveReport rep = rcdl_solve(M, spanning_tree_init(inst.graph, 4), cfg, LocalConfig{});
    EXPECT_LE(rep.epochs, 2);
    EXPECT_NEAR(chordal_cost(rep.rotations, M), 0.0, 1e-9);
  }
}

TEST(RcdlSolve, NoiselessPerturbedStartOnDenseGraph) {
  const SynthInstance inst = generate({60, 0.3, 0.0, GraphStyle::kSfm, 9});
  const MeasurementMatrix M(inst.graph);
  Rng rng(3);
  RotationStack start = inst.ground_truth;
  for (auto& R : start) R = axis_angle(rng.unit_vector(), 0.05) * R;
  SolveConfig cfg;
  cfg.tolerance = 1e-12;
  const SolveReport rep = rcdl_solve(M, start, cfg, LocalConfig{});
  ASSERT_FALSE(rep.local_attempts.empty());
  EXPECT_TRUE(rep.local_attempts.front().accepted);
  EXPECT_LT(rep.local_attempts.front().objective_after + 6.0 * inst.graph.num_edges(), 1e-9);
  EXPECT_LE(rep.epochs, 2);
}

}  // namespace
}  // namespace rotavg
