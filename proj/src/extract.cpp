#include "rotavg/eigen.hpp"

#include "detail.hpp"
#include "rotavg/error.hpp"
#include "rotavg/solver.hpp"

namespace rotavg {

Extraction extract_rotations(const DenseSdpIterate& Y, ExtractMode mode, int column) {
  const Eigen::Index dim = Y.rows();
  if (Y.cols() != dim || dim % 3 != 0 || dim == 0) {
    throw Error(ErrorCode::kInvalidArgument, "iterate must be square with 3n rows");
  }
  const int n = static_cast<int>(dim / 3);
  if (mode == ExtractMode::kColumn && (column < 0 || column >= n)) {
    throw Error(ErrorCode::kIndexOutOfRange, "extraction column out of range");
  }

  const SymmetricEigen eig = symmetric_eigen(Y);
  const Eigen::VectorXd& lambda = eig.values;  // ascending
  const double lambda_max = lambda[dim - 1];
  if (dim > 3 && lambda[dim - 4] > 1e-6 * lambda_max) {
    throw Error(ErrorCode::kNotRankThree, "iterate is not numerically rank 3");
  }

  Extraction out;
  out.rotations.resize(static_cast<std::size_t>(n));
  if (mode == ExtractMode::kFactorise) {
    const Eigen::Vector3d top = lambda.tail<3>().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXd F = eig.vectors.rightCols(3) * top.asDiagonal();
    for (int i = 0; i < n; ++i) out.rotations[i] = project_to_orthogonal(F.middleRows<3>(3 * i));
  } else {
    for (int i = 0; i < n; ++i) {
      out.rotations[i] = i == column ? Mat3::Identity()
                                     : project_to_orthogonal(Y.block<3, 3>(3 * i, 3 * column));
    }
  }
  out.flips = detail::flip_determinants(out.rotations);
  return out;
}

}  // namespace rotavg
