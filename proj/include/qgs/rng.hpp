// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random numbers for sampling checks. The generator is
// splitmix64 (Steele, Lea, Flood 2014): a 64-bit counter advanced by the
// golden-gamma constant and finalized with two xor-shift multiplies. It is
// tiny, seeds instantly, and produces identical streams on every platform,
// which is what repeatable sampling bounds need. Gaussians come from the
// Box-Muller transform applied to uniform draws from that stream.

#pragma once

#include <cmath>
#include <cstdint>

#include "qgs/complex_matrix.hpp"

namespace qgs {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw strictly inside (0, 1).
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  /// Standard normal via Box-Muller; the paired draw is cached.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Complex number with independent N(0,1) real and imaginary parts.
  cplx next_complex_gaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {re, im};
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Ginibre random density matrix: G G^dagger / trace(G G^dagger) for a
/// dim x dim matrix G of standard complex Gaussians. Unit trace, Hermitian,
/// positive semidefinite; the same seed always yields the same matrix.
inline ComplexMatrix random_density(int dim, std::uint64_t seed) {
  if (dim < 1) throw ValidationError("random_density: dim must be >= 1");
  Rng rng(seed);
  ComplexMatrix g(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = rng.next_complex_gaussian();
  ComplexMatrix d = matmul(g, dagger(g));
  const double tr = trace(d).real();
  return hermitize((1.0 / tr) * d);
}

}  // namespace qgs
