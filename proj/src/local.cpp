#include "rotavg/local.hpp"

#include <cmath>

#include "rotavg/error.hpp"

namespace rotavg {

void validate(const LocalConfig& cfg) {
  if (cfg.sweeps < 1) throw Error(ErrorCode::kInvalidArgument, "local sweeps must be >= 1");
  if (!(cfg.tolerance >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "local tolerance must be >= 0");
  }
}

RotationStack local_refine(const RotationStack& R, const MeasurementMatrix& M,
                           const LocalConfig& cfg) {
  validate(cfg);
  if (static_cast<int>(R.size()) != M.size()) {
    throw Error(ErrorCode::kInvalidArgument, "stack size does not match the graph");
  }
  RotationStack out = R;
  double previous = objective(out, M);
  for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
    for (int v = 0; v < M.size(); ++v) {
      // (Rt R)_v = sum_b block(v, b) R_b, and block(v, b) = block(b, v)^T.
      Mat3 sum = Mat3::Zero();
      for (const auto& e : M.column(v).entries) sum.noalias() += e.block.transpose() * out[e.row];
      try {
        out[v] = project_to_rotation(sum);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDegenerateInput) throw;
      }
    }
    const double f = objective(out, M);
    if (std::abs(previous - f) <= cfg.tolerance * (std::abs(previous) + 1e-15)) break;
    previous = f;
  }
  return out;
}

}  // namespace rotavg
