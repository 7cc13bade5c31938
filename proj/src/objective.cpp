#include <cmath>
#include <string>

#include "detail.hpp"
#include "rotavg/error.hpp"
#include "rotavg/random.hpp"
#include "rotavg/solver.hpp"

namespace rotavg {

std::string_view termination_name(Termination t) {
  return t == Termination::kConverged ? "Converged" : "MaxEpochs";
}

void validate(const SolveConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be > 0");
  if (cfg.max_epochs < 1) throw Error(ErrorCode::kInvalidArgument, "max_epochs must be >= 1");
}

double objective(const RotationStack& R, const MeasurementMatrix& M) {
  double sum = 0.0;
  for (int i = 0; i < M.size(); ++i) {
    // Entries of column i below the diagonal are the edges (i, j > i) with block Q_ij.
    for (const auto& e : M.column(i).entries) {
      if (e.row > i) sum += (R[e.row].transpose() * e.block * R[i]).trace();
    }
  }
  return -2.0 * sum;
}

double chordal_cost(const RotationStack& R, const MeasurementMatrix& M) {
  double sum = 0.0;
  for (int i = 0; i < M.size(); ++i) {
    for (const auto& e : M.column(i).entries) {
      if (e.row > i) sum += (R[e.row] * R[i].transpose() - e.block).squaredNorm();
    }
  }
  return sum;
}

double sdp_objective(const DenseSdpIterate& Y, const MeasurementMatrix& M) {
  double sum = 0.0;
  for (int i = 0; i < M.size(); ++i) {
    for (const auto& e : M.column(i).entries) {
      if (e.row > i) sum += (e.block * Y.block<3, 3>(3 * i, 3 * e.row)).trace();
    }
  }
  return -2.0 * sum;
}

DenseSdpIterate gram(const std::vector<Mat3>& R) {
  const int n = static_cast<int>(R.size());
  Eigen::MatrixXd F(3 * n, 3);
  for (int i = 0; i < n; ++i) F.block<3, 3>(3 * i, 0) = R[i];
  return F * F.transpose();
}

RotationStack identity_stack(int n) {
  return RotationStack(static_cast<std::size_t>(n), Mat3::Identity());
}

RotationStack random_stack(int n, std::uint64_t seed) {
  Rng rng(seed);
  RotationStack R(static_cast<std::size_t>(n));
  for (auto& r : R) r = rng.rotation();
  return R;
}

DenseSdpIterate random_sdp_iterate(int n, int rank, std::uint64_t seed) {
  if (n < 1 || rank < 3 || rank > 3 * n) {
    throw Error(ErrorCode::kInvalidArgument, "random_sdp_iterate needs 3 <= rank <= 3n");
  }
  Rng rng(seed);
  Eigen::MatrixXd V(3 * n, rank);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd G(3, rank);
    for (Eigen::Index c = 0; c < G.size(); ++c) G(c) = rng.normal();
    const Mat3 gram_i = G * G.transpose();
    V.middleRows<3>(3 * i) = sqrt_pseudoinverse(gram_i) * G;
  }
  DenseSdpIterate Y = V * V.transpose();
  for (int i = 0; i < n; ++i) Y.block<3, 3>(3 * i, 3 * i).setIdentity();
  return Y;
}

std::vector<int> epoch_order(int n, KOrder order, std::uint64_t seed, int epoch) {
  if (order == KOrder::kCyclic) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
  }
  return Rng(seed).split(static_cast<std::uint64_t>(epoch)).permutation(n);
}

namespace detail {

bool is_connected(const MeasurementMatrix& M) {
  const int n = M.size();
  if (n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& e : M.column(v).entries) {
      if (!seen[e.row]) {
        seen[e.row] = 1;
        ++reached;
        stack.push_back(e.row);
      }
    }
  }
  return reached == n;
}

void check_solver_input(const MeasurementMatrix& M, const RotationStack& R0) {
  if (static_cast<int>(R0.size()) != M.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "initial stack has " + std::to_string(R0.size()) + " blocks, graph has " +
                    std::to_string(M.size()) + " vertices");
  }
  for (std::size_t i = 0; i < R0.size(); ++i) {
    if (!is_rotation(R0[i], 1e-8)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "initial block " + std::to_string(i) + " is not a rotation");
    }
  }
  if (!is_connected(M)) throw Error(ErrorCode::kDisconnected, "camera graph is disconnected");
}

int flip_determinants(std::vector<Mat3>& R) {
  int flips = 0;
  for (auto& r : R) {
    if (r.determinant() < 0.0) {
      r = -r;
      ++flips;
    }
  }
  return flips;
}

bool converged(double previous, double current, double tolerance) {
  return std::abs(current - previous) / (std::abs(previous) + 1e-15) < tolerance;
}

}  // namespace detail
}  // namespace rotavg
