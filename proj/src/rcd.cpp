#include "detail.hpp"
#include "rotavg/error.hpp"
#include "rotavg/solver.hpp"

namespace rotavg {

int rcd_update(std::vector<Mat3>& R, const MeasurementMatrix& M, int k, bool flip,
               std::uint64_t& block_mults) {
  const BlockColumn W = M.column(k);
  if (W.entries.empty()) {
    throw Error(ErrorCode::kIsolatedVertex, "vertex " + std::to_string(k) + " has no edges");
  }
  const int n = M.size();

  // A = R^T W, a single 3x3 accumulation over the neighbours of k.
  Mat3 A = Mat3::Zero();
  for (const auto& w : W.entries) A.noalias() += R[w.row].transpose() * w.block;

  // W^T Z with Z_i = R_i A; only the neighbour rows of Z meet a nonzero W_i.
  Mat3 WtZ = Mat3::Zero();
  for (const auto& w : W.entries) WtZ.noalias() += w.block.transpose() * (R[w.row] * A);
  block_mults += 3 * W.entries.size();

  Mat3 P;
  try {
    P = sqrt_pseudoinverse(WtZ);
  } catch (const Error& e) {
    throw Error(ErrorCode::kNumericalBreakdown, std::string("rcd step: ") + e.what());
  }

  // S_i = Z_i P = R_i (A P) for every block.
  const Mat3 B = A * P;
  for (int i = 0; i < n; ++i) {
    if (i != k) R[i] = R[i] * B;
  }
  block_mults += static_cast<std::uint64_t>(n);
  R[k].setIdentity();
  return flip ? detail::flip_determinants(R) : 0;
}

RcdStepResult rcd_step(const RotationStack& R, const MeasurementMatrix& M, int k) {
  RcdStepResult out;
  out.q = R;
  rcd_update(out.q, M, k, /*flip=*/false, out.block_mults);
  out.rotations = out.q;
  out.flips = detail::flip_determinants(out.rotations);
  return out;
}

SolveReport rcd_solve(const MeasurementMatrix& M, const RotationStack& R0,
                      const SolveConfig& cfg) {
  validate(cfg);
  detail::check_solver_input(M, R0);
  const detail::Stopwatch clock;
  const int n = M.size();

  SolveReport report;
  report.solver = "rcd";
  std::vector<Mat3> R = R0;
  report.initial_objective = objective(R, M);
  double previous = report.initial_objective;

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    int flips = 0;
    if (n >= 2) {
      for (int k : epoch_order(n, cfg.k_order, cfg.seed, epoch)) {
        flips += rcd_update(R, M, k, /*flip=*/true, report.block_mults);
        ++report.iterations;
      }
    }
    const double f = objective(R, M);
    report.objective_trace.push_back(f);
    report.flips_per_epoch.push_back(flips);
    report.epoch_seconds.push_back(clock.seconds());
    report.epochs = epoch + 1;
    if (n < 2 || detail::converged(previous, f, cfg.tolerance)) {
      report.termination = Termination::kConverged;
      break;
    }
    previous = f;
  }
  report.rotations = std::move(R);
  report.seconds = clock.seconds();
  return report;
}

}  // namespace rotavg
