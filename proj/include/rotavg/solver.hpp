#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotavg/graph.hpp"

namespace rotavg {

// Blocks are orthogonal but may have det -1 (pre-flip iterates).
using OrthogonalStack = std::vector<Mat3>;

// Dense 3n x 3n iterate Y of the semidefinite relaxation: symmetric PSD with
// identity diagonal blocks. O(n^2) memory; meant for n up to a few hundred.
using DenseSdpIterate = Eigen::MatrixXd;

enum class KOrder { kRandomPermutation, kCyclic };

enum class Termination { kConverged, kMaxEpochs };

std::string_view termination_name(Termination t);

struct SolveConfig {
  // Relative objective change over one epoch below which a solve stops.
  double tolerance = 1e-9;
  int max_epochs = 10000;
  KOrder k_order = KOrder::kRandomPermutation;
  std::uint64_t seed = 0;
};

// Throws kInvalidArgument unless tolerance > 0 and max_epochs >= 1.
void validate(const SolveConfig& cfg);

struct LocalAttempt {
  int epoch = 0;
  int delay = 0;  // s before the attempt
  bool accepted = false;
  double objective_before = 0.0;
  double objective_after = 0.0;
};

struct SolveReport {
  std::string solver;
  RotationStack rotations;
  double initial_objective = 0.0;
  // Matrix-form objective -tr(R^T Rt R) (or -tr(Rt Y) for BCD) after each epoch.
  std::vector<double> objective_trace;
  std::vector<int> flips_per_epoch;
  // Cumulative wall time at the end of each epoch.
  std::vector<double> epoch_seconds;
  int epochs = 0;
  long long iterations = 0;
  Termination termination = Termination::kMaxEpochs;
  double seconds = 0.0;
  // 3x3 block multiplications performed by the coordinate updates.
  std::uint64_t block_mults = 0;
  std::vector<LocalAttempt> local_attempts;  // RCDL only

  double final_objective() const { return objective_trace.back(); }
};

// -tr(R^T Rt R) = -2 sum_edges tr(R_j^T Rt_ij R_i).
double objective(const RotationStack& R, const MeasurementMatrix& M);

// sum_edges ||R_j R_i^T - Rt_ij||_F^2 = 6m + objective(R, M).
double chordal_cost(const RotationStack& R, const MeasurementMatrix& M);

// -tr(Rt Y).
double sdp_objective(const DenseSdpIterate& Y, const MeasurementMatrix& M);

// R R^T.
DenseSdpIterate gram(const std::vector<Mat3>& R);

RotationStack identity_stack(int n);
RotationStack random_stack(int n, std::uint64_t seed);

// Random feasible iterate V V^T of the given rank (3 <= rank <= 3n); each
// 3 x rank block row of V has orthonormal rows. rank = 3n is full rank.
DenseSdpIterate random_sdp_iterate(int n, int rank, std::uint64_t seed);

// Order in which k is visited during epoch `epoch`.
std::vector<int> epoch_order(int n, KOrder order, std::uint64_t seed, int epoch);

// ---------------------------------------------------------------------------
// Rotation coordinate descent

struct RcdStepResult {
  OrthogonalStack q;        // block k = I, block i = S_i
  RotationStack rotations;  // q with det-negative blocks negated
  int flips = 0;
  std::uint64_t block_mults = 0;
};

// One coordinate update with camera k as reference frame.
//
//   W = column k,  A = sum_i R_i^T W_i,  Z_i = R_i A,  S = Z [(W^T Z)^{1/2}]^+
//
// A and W^T Z touch only the deg(k) neighbours, Z and S touch all n blocks.
// Throws kIsolatedVertex (deg(k) = 0), kIndexOutOfRange, kNumericalBreakdown.
RcdStepResult rcd_step(const RotationStack& R, const MeasurementMatrix& M, int k);

// In-place form used by the solvers. Returns the number of flipped blocks
// (always 0 when flip is false).
int rcd_update(std::vector<Mat3>& R, const MeasurementMatrix& M, int k, bool flip,
               std::uint64_t& block_mults);

SolveReport rcd_solve(const MeasurementMatrix& M, const RotationStack& R0,
                      const SolveConfig& cfg);

// ---------------------------------------------------------------------------
// Block coordinate descent on the dense iterate

// Z = Y W, S = Z [(W^T Z)^{1/2}]^+, then block row/column k of Y replaced by S
// with Y_kk = I. Costs n * deg(k) block multiplications.
DenseSdpIterate bcd_step(const DenseSdpIterate& Y, const MeasurementMatrix& M, int k);

void bcd_update(DenseSdpIterate& Y, const MeasurementMatrix& M, int k,
                std::uint64_t& block_mults);

struct BcdResult {
  DenseSdpIterate y;
  SolveReport report;  // rotations extracted by factorisation
};

// Called after every iteration with the current iterate and the updated k.
using BcdObserver = std::function<void(const DenseSdpIterate&, int k)>;

BcdResult bcd_solve(const MeasurementMatrix& M, const DenseSdpIterate& Y0,
                    const SolveConfig& cfg, const BcdObserver& observer = {});

// ---------------------------------------------------------------------------
// Rotation extraction and metrics

enum class ExtractMode { kFactorise, kColumn };

struct Extraction {
  RotationStack rotations;
  int flips = 0;
};

// kFactorise: top-3 eigenpairs, per-block orthogonal projection and sign flip.
// kColumn: block column `column` of Y with its own block set to I, then flips.
// Throws kNotRankThree when lambda_4 > 1e-6 lambda_max.
Extraction extract_rotations(const DenseSdpIterate& Y, ExtractMode mode, int column = 0);

// G minimising sum ||R_est_i G - R_ref_i||_F^2.
Mat3 align_gauge(const RotationStack& R_est, const RotationStack& R_ref);

struct ErrorStats {
  double mean_deg = 0.0;
  double median_deg = 0.0;
  double max_deg = 0.0;
};

ErrorStats error_stats(const RotationStack& R_est, const RotationStack& R_ref);

// Max gauge-aligned angular error in radians.
double max_aligned_error(const RotationStack& R_est, const RotationStack& R_ref);

// 100 (f - f_best) / |f_best|. Throws kDivisionByZero when f_best == 0.
double relative_objective_error(double f, double f_best);

// d_angle(R_j R_i^T, Rt_ij) per edge, in graph edge order.
std::vector<double> edge_residuals(const RotationStack& R, const CameraGraph& graph);

}  // namespace rotavg
