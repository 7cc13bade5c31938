#include <string>

#include "detail.hpp"
#include "rotavg/error.hpp"
#include "rotavg/solver.hpp"

namespace rotavg {

void bcd_update(DenseSdpIterate& Y, const MeasurementMatrix& M, int k,
                std::uint64_t& block_mults) {
  const BlockColumn W = M.column(k);
  if (W.entries.empty()) {
    throw Error(ErrorCode::kIsolatedVertex, "vertex " + std::to_string(k) + " has no edges");
  }
  const int n = M.size();
  const Eigen::Index dim = 3 * static_cast<Eigen::Index>(n);

  // Z = Y W: every block row of Y meets every nonzero block of W.
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(dim, 3);
  for (const auto& w : W.entries) {
    Z.noalias() += Y.middleCols(3 * static_cast<Eigen::Index>(w.row), 3) * w.block;
  }
  block_mults += static_cast<std::uint64_t>(n) * W.entries.size();

  Mat3 WtZ = Mat3::Zero();
  for (const auto& w : W.entries) {
    WtZ.noalias() += w.block.transpose() * Z.middleRows<3>(3 * static_cast<Eigen::Index>(w.row));
  }
  block_mults += W.entries.size();

  Mat3 P;
  try {
    P = sqrt_pseudoinverse(WtZ);
  } catch (const Error& e) {
    throw Error(ErrorCode::kNumericalBreakdown, std::string("bcd step: ") + e.what());
  }
  const Eigen::MatrixXd S = Z * P;
  block_mults += static_cast<std::uint64_t>(n);

  const Eigen::Index c = 3 * static_cast<Eigen::Index>(k);
  Y.middleCols(c, 3) = S;
  Y.middleRows(c, 3) = S.transpose();
  Y.block<3, 3>(c, c).setIdentity();
}

DenseSdpIterate bcd_step(const DenseSdpIterate& Y, const MeasurementMatrix& M, int k) {
  DenseSdpIterate out = Y;
  std::uint64_t mults = 0;
  bcd_update(out, M, k, mults);
  return out;
}

namespace {

void check_iterate(const DenseSdpIterate& Y, const MeasurementMatrix& M) {
  const Eigen::Index dim = 3 * static_cast<Eigen::Index>(M.size());
  if (Y.rows() != dim || Y.cols() != dim) {
    throw Error(ErrorCode::kInvalidArgument, "iterate dimension does not match the graph");
  }
  if ((Y - Y.transpose()).cwiseAbs().maxCoeff() > 1e-8) {
    throw Error(ErrorCode::kInvalidArgument, "iterate is not symmetric");
  }
  for (int i = 0; i < M.size(); ++i) {
    if ((Y.block<3, 3>(3 * i, 3 * i) - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-8) {
      throw Error(ErrorCode::kInvalidArgument, "iterate diagonal block is not the identity");
    }
  }
}

RotationStack rotations_from(const DenseSdpIterate& Y) {
  try {
    return extract_rotations(Y, ExtractMode::kFactorise).rotations;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotRankThree) throw;
  }
  // Not converged to a rank-3 point: round block column 0 instead.
  const int n = static_cast<int>(Y.rows() / 3);
  RotationStack R(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Mat3 q = project_to_orthogonal(Y.block<3, 3>(3 * i, 0));
    R[i] = q.determinant() < 0.0 ? Mat3(-q) : q;
  }
  return R;
}

}  // namespace

BcdResult bcd_solve(const MeasurementMatrix& M, const DenseSdpIterate& Y0,
                    const SolveConfig& cfg, const BcdObserver& observer) {
  validate(cfg);
  check_iterate(Y0, M);
  if (!detail::is_connected(M)) {
    throw Error(ErrorCode::kDisconnected, "camera graph is disconnected");
  }
  const detail::Stopwatch clock;
  const int n = M.size();

  BcdResult out{Y0, {}};
  SolveReport& report = out.report;
  report.solver = "bcd";
  report.initial_objective = sdp_objective(out.y, M);
  double previous = report.initial_objective;

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    if (n >= 2) {
      for (int k : epoch_order(n, cfg.k_order, cfg.seed, epoch)) {
        bcd_update(out.y, M, k, report.block_mults);
        ++report.iterations;
        if (observer) observer(out.y, k);
      }
    }
    const double f = sdp_objective(out.y, M);
    report.objective_trace.push_back(f);
    report.flips_per_epoch.push_back(0);
    report.epoch_seconds.push_back(clock.seconds());
    report.epochs = epoch + 1;
    if (n < 2 || detail::converged(previous, f, cfg.tolerance)) {
      report.termination = Termination::kConverged;
      break;
    }
    previous = f;
  }
  report.rotations = rotations_from(out.y);
  report.seconds = clock.seconds();
  return out;
}

}  // namespace rotavg
