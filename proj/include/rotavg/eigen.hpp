#pragma once

#include <Eigen/Dense>

namespace rotavg {

struct SymmetricEigen {
  Eigen::VectorXd values;   // increasing
  Eigen::MatrixXd vectors;  // columns match `values`
};

// Eigen's QL iteration occasionally reports NoConvergence on nearly
// low-rank PSD matrices (and then leaves the spectrum unsorted). Both helpers
// retry on A + sI with s = trace / dim and throw kNumericalBreakdown if that
// fails too. A is symmetrised first.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& A);
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& A);

}  // namespace rotavg
