#include "rotavg/eigen.hpp"

#include <Eigen/Eigenvalues>

#include "rotavg/error.hpp"

namespace rotavg {

namespace {

SymmetricEigen solve(const Eigen::MatrixXd& A, bool vectors) {
  const Eigen::MatrixXd S = 0.5 * (A + A.transpose());
  const int options = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S, options);
  double shift = 0.0;
  if (eig.info() != Eigen::Success) {
    shift = S.rows() > 0 ? S.trace() / static_cast<double>(S.rows()) : 0.0;
    if (shift == 0.0) shift = 1.0;
    eig.compute(S + shift * Eigen::MatrixXd::Identity(S.rows(), S.cols()), options);
    if (eig.info() != Eigen::Success) {
      throw Error(ErrorCode::kNumericalBreakdown, "symmetric eigensolver did not converge");
    }
  }
  SymmetricEigen out;
  out.values = eig.eigenvalues().array() - shift;
  if (vectors) out.vectors = eig.eigenvectors();
  return out;
}

}  // namespace

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& A) { return solve(A, false).values; }

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& A) { return solve(A, true); }

}  // namespace rotavg
