#include "rotavg/so3.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "rotavg/error.hpp"

namespace rotavg {

double chordal_distance(const Mat3& R, const Mat3& S) { return (R - S).norm(); }

double angular_distance(const Mat3& R, const Mat3& S) {
  const Mat3 A = R * S.transpose();
  const double c = (A.trace() - 1.0) / 2.0;
  const double s = 0.5 * Vec3(A(2, 1) - A(1, 2), A(0, 2) - A(2, 0), A(1, 0) - A(0, 1)).norm();
  return std::atan2(s, c);
}

double chordal_from_angular(double theta) {
  return 2.0 * std::sqrt(2.0) * std::sin(theta / 2.0);
}

Mat3 sqrt_pseudoinverse(const Mat3& M) {
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw Error(ErrorCode::kNotSymmetric, "sqrt_pseudoinverse: input is not symmetric");
  }
  const Mat3 sym = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Mat3> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalBreakdown, "sqrt_pseudoinverse: eigensolver failed");
  }
  const Vec3 lambda = eig.eigenvalues();
  const double ref = std::max(lambda.maxCoeff(), 1.0);
  if (lambda.minCoeff() < -1e-6 * ref) {
    throw Error(ErrorCode::kIndefiniteInput, "sqrt_pseudoinverse: input is indefinite");
  }
  const double cutoff = 1e-10 * ref;
  Vec3 inv_sqrt;
  for (int a = 0; a < 3; ++a) {
    inv_sqrt[a] = lambda[a] > cutoff ? 1.0 / std::sqrt(lambda[a]) : 0.0;
  }
  const Mat3& V = eig.eigenvectors();
  return V * inv_sqrt.asDiagonal() * V.transpose();
}

namespace {

Eigen::JacobiSVD<Mat3> svd_of(const Mat3& M) {
  Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3& s = svd.singularValues();
  // Singular values are sorted in decreasing order.
  if (s[1] < 1e-12) {
    throw Error(ErrorCode::kDegenerateInput, "rotation projection of a rank < 2 matrix");
  }
  return svd;
}

}  // namespace

Mat3 project_to_rotation(const Mat3& M) {
  const auto svd = svd_of(M);
  const Mat3& U = svd.matrixU();
  const Mat3& V = svd.matrixV();
  Vec3 d(1.0, 1.0, 1.0);
  if ((U * V.transpose()).determinant() < 0.0) d[2] = -1.0;
  return U * d.asDiagonal() * V.transpose();
}

Mat3 project_to_orthogonal(const Mat3& M) {
  Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

Mat3 quat_to_rotation(const UnitQuaternion& q) {
  const double norm = std::sqrt(q.qx * q.qx + q.qy * q.qy + q.qz * q.qz + q.qw * q.qw);
  if (norm < 1e-9) throw Error(ErrorCode::kZeroQuaternion, "quaternion has zero norm");
  const double x = q.qx / norm, y = q.qy / norm, z = q.qz / norm, w = q.qw / norm;
  Mat3 R;
  R << 1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
       2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
       2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y);
  return R;
}

UnitQuaternion rotation_to_quat(const Mat3& R) {
  Eigen::Quaterniond q(R);
  q.normalize();
  // Canonical sign: qw >= 0.
  if (q.w() < 0.0) q.coeffs() *= -1.0;
  return {q.x(), q.y(), q.z(), q.w()};
}

Mat3 axis_angle(const Vec3& axis, double angle) {
  const Vec3 u = axis.normalized();
  Mat3 K;
  K << 0, -u.z(), u.y(), u.z(), 0, -u.x(), -u.y(), u.x(), 0;
  return Mat3::Identity() + std::sin(angle) * K + (1.0 - std::cos(angle)) * K * K;
}

Mat3 rot_x(double angle) { return axis_angle(Vec3::UnitX(), angle); }
Mat3 rot_y(double angle) { return axis_angle(Vec3::UnitY(), angle); }
Mat3 rot_z(double angle) { return axis_angle(Vec3::UnitZ(), angle); }

bool is_orthogonal(const Mat3& R, double tol) {
  return (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol;
}

bool is_rotation(const Mat3& R, double tol) {
  return is_orthogonal(R, tol) && std::abs(R.determinant() - 1.0) <= tol;
}

}  // namespace rotavg
