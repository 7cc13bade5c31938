#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rotavg/so3.hpp"

namespace rotavg {

// Counter-based generator: output k is splitmix64(seed + k * 0x9E3779B97F4A7C15).
// All derived draws (uniform, normal, permutations) are implemented here rather
// than through <random> distributions so that sequences are identical across
// standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound);
  // Standard normal via Box-Muller (no cached second value).
  double normal();
  // Uniform direction on the unit sphere.
  Vec3 unit_vector();
  // Haar-uniform rotation (normalised Gaussian quaternion).
  Mat3 rotation();

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  std::vector<int> permutation(int n);

  // Independent stream derived from this generator's seed and a tag.
  Rng split(std::uint64_t tag) const;

 private:
  std::uint64_t state_;
};

}  // namespace rotavg
