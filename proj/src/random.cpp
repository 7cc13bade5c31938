#include "rotavg/random.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Geometry>

namespace rotavg {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next() {
  state_ += kGolden;
  return mix(state_);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

double Rng::normal() {
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec3 Rng::unit_vector() {
  Vec3 v;
  do {
    v = Vec3(normal(), normal(), normal());
  } while (v.norm() < 1e-12);
  return v.normalized();
}

Mat3 Rng::rotation() {
  Eigen::Vector4d v;
  do {
    v = Eigen::Vector4d(normal(), normal(), normal(), normal());
  } while (v.norm() < 1e-12);
  v.normalize();
  return Eigen::Quaterniond(v[3], v[0], v[1], v[2]).toRotationMatrix();
}

std::vector<int> Rng::permutation(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  shuffle(std::span<int>(p));
  return p;
}

Rng Rng::split(std::uint64_t tag) const { return Rng(mix(state_ ^ mix(tag + kGolden))); }

}  // namespace rotavg
