#pragma once

#include <chrono>

#include "rotavg/solver.hpp"

namespace rotavg::detail {

bool is_connected(const MeasurementMatrix& M);

// Throws kInvalidArgument on size mismatch or non-rotation blocks,
// kDisconnected when M's graph is disconnected.
void check_solver_input(const MeasurementMatrix& M, const RotationStack& R0);

// Negates det-negative blocks, returns how many.
int flip_determinants(std::vector<Mat3>& R);

bool converged(double previous, double current, double tolerance);

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace rotavg::detail
