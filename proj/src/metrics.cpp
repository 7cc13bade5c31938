#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotavg/error.hpp"
#include "rotavg/solver.hpp"

namespace rotavg {

namespace {

void check_lengths(const RotationStack& a, const RotationStack& b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "rotation stacks must be non-empty and equal length");
  }
}

std::vector<double> aligned_errors(const RotationStack& R_est, const RotationStack& R_ref) {
  const Mat3 G = align_gauge(R_est, R_ref);
  std::vector<double> err(R_est.size());
  for (std::size_t i = 0; i < R_est.size(); ++i) err[i] = angular_distance(R_est[i] * G, R_ref[i]);
  return err;
}

}  // namespace

Mat3 align_gauge(const RotationStack& R_est, const RotationStack& R_ref) {
  check_lengths(R_est, R_ref);
  Mat3 sum = Mat3::Zero();
  for (std::size_t i = 0; i < R_est.size(); ++i) sum += R_est[i].transpose() * R_ref[i];
  return project_to_rotation(sum);
}

ErrorStats error_stats(const RotationStack& R_est, const RotationStack& R_ref) {
  std::vector<double> err = aligned_errors(R_est, R_ref);
  constexpr double kDeg = 180.0 / std::numbers::pi;
  ErrorStats s;
  double sum = 0.0;
  for (double e : err) sum += e;
  s.mean_deg = kDeg * sum / static_cast<double>(err.size());
  std::sort(err.begin(), err.end());
  const std::size_t mid = err.size() / 2;
  s.median_deg = kDeg * (err.size() % 2 == 1 ? err[mid] : 0.5 * (err[mid - 1] + err[mid]));
  s.max_deg = kDeg * err.back();
  return s;
}

double max_aligned_error(const RotationStack& R_est, const RotationStack& R_ref) {
  const auto err = aligned_errors(R_est, R_ref);
  return *std::max_element(err.begin(), err.end());
}

double relative_objective_error(double f, double f_best) {
  if (f_best == 0.0) throw Error(ErrorCode::kDivisionByZero, "reference objective is zero");
  return 100.0 * (f - f_best) / std::abs(f_best);
}

std::vector<double> edge_residuals(const RotationStack& R, const CameraGraph& graph) {
  if (static_cast<int>(R.size()) != graph.num_vertices()) {
    throw Error(ErrorCode::kInvalidArgument, "stack size does not match the graph");
  }
  std::vector<double> out;
  out.reserve(graph.num_edges());
  for (const auto& e : graph.edges()) {
    out.push_back(angular_distance(R[e.j] * R[e.i].transpose(), e.rotation));
  }
  return out;
}

}  // namespace rotavg
