#pragma once

#include <Eigen/Dense>

namespace rotavg {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

// Hamilton convention, stored in g2o order (qx, qy, qz, qw).
struct UnitQuaternion {
  double qx = 0.0;
  double qy = 0.0;
  double qz = 0.0;
  double qw = 1.0;
};

// Frobenius norm of R - S. Inputs need not be rotations.
double chordal_distance(const Mat3& R, const Mat3& S);

// Rotation angle of R S^T in [0, pi]. atan2 of the skew and trace parts, so
// small angles keep full relative precision.
double angular_distance(const Mat3& R, const Mat3& S);

// 2*sqrt(2)*sin(theta/2): the chordal distance of two rotations theta apart.
double chordal_from_angular(double theta);

// [(M)^{1/2}]^+ for a symmetric PSD 3x3 matrix.
//
// Symmetry is checked relative to the magnitude of M and the input is then
// symmetrised. Eigenvalues below 1e-10 * max(lambda_max, 1) count as zero.
// Throws kNotSymmetric or kIndefiniteInput (eigenvalue < -1e-6 * max(lambda_max, 1)).
Mat3 sqrt_pseudoinverse(const Mat3& M);

// Nearest rotation: argmax over SO(3) of tr(R^T M). When the orthogonal polar
// factor is a reflection, the direction of the smallest singular value is negated.
// Throws kDegenerateInput when two or more singular values are below 1e-12.
Mat3 project_to_rotation(const Mat3& M);

// Nearest orthogonal matrix (det may be -1).
Mat3 project_to_orthogonal(const Mat3& M);

// Renormalises q; throws kZeroQuaternion when |q| < 1e-9.
Mat3 quat_to_rotation(const UnitQuaternion& q);

UnitQuaternion rotation_to_quat(const Mat3& R);

// Rodrigues formula; axis need not be normalised but must be nonzero.
Mat3 axis_angle(const Vec3& axis, double angle);

Mat3 rot_x(double angle);
Mat3 rot_y(double angle);
Mat3 rot_z(double angle);

// Max-abs deviation of R^T R from I and |det R - 1| both within tol.
bool is_rotation(const Mat3& R, double tol = 1e-9);
// R^T R = I within tol (det may be -1).
bool is_orthogonal(const Mat3& R, double tol = 1e-8);

}  // namespace rotavg
