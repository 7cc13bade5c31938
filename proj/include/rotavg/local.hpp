#pragma once

#include <functional>

#include "rotavg/solver.hpp"

namespace rotavg {

struct LocalConfig {
  // Full Gauss-Seidel passes per invocation.
  int sweeps = 30;
  // Stop early once a pass changes the objective by less than this, relatively.
  double tolerance = 1e-10;
};

void validate(const LocalConfig& cfg);

// Gauss-Seidel chordal sweeps: each vertex v in ascending order is replaced by
// project_to_rotation((Rt R)_v), its optimum with all other rotations fixed.
// Vertices whose neighbour sum is degenerate are left unchanged for that pass.
RotationStack local_refine(const RotationStack& R, const MeasurementMatrix& M,
                           const LocalConfig& cfg);

// Rotation stack in, rotation stack out.
using LocalMethod = std::function<RotationStack(const RotationStack&, const MeasurementMatrix&)>;

// RCD with epoch-level local refinement.
//
// Each epoch runs n coordinate updates over a permutation of the vertices
// (without determinant flips). After epoch e, when s == 0 or e % s == 0, the
// blocks are flipped to rotations and the local method is tried; its result is
// kept only if it strictly lowers the objective, otherwise s += 2.
SolveReport rcdl_solve(const MeasurementMatrix& M, const RotationStack& R0,
                       const SolveConfig& cfg, const LocalMethod& local);

SolveReport rcdl_solve(const MeasurementMatrix& M, const RotationStack& R0,
                       const SolveConfig& cfg, const LocalConfig& lcfg);

}  // namespace rotavg
