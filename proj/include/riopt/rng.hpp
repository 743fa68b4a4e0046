#pragma once

#include "riopt/types.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace riopt {

// Deterministic random stream. The uniform and Gaussian generators are spelled
// out (instead of std::*_distribution) so that a (seed, stream) pair yields
// bit-identical sequences across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(mix(seed, stream)) {}

  // Uniform in [0, 1) with 53-bit resolution.
  Scalar uniform01() {
    return static_cast<Scalar>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; one cached variate.
  Scalar normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    Scalar u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const Scalar u2 = uniform01();
    const Scalar r = std::sqrt(-2.0 * std::log(u1));
    const Scalar a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  bool bernoulli(Scalar p) { return uniform01() < p; }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  Matrix gaussian_matrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) m(i, j) = normal();
    return m;
  }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over (seed, stream) decorrelates nearby streams.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
  Scalar cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace riopt
