// SPDX-License-Identifier: Apache-2.0
//
// Shared fixtures and independent test oracles. Oracles here deliberately
// avoid the library's computation paths: brute-force contractions, direct
// recurrences, and closed forms are spelled out longhand so the tests can
// disagree with the implementation.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qgs/complex_matrix.hpp"
#include "qgs/game.hpp"
#include "qgs/rng.hpp"

namespace qgs_test {

using qgs::ComplexMatrix;
using qgs::cplx;

inline ComplexMatrix sigma_x() {
  return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
}

inline ComplexMatrix sigma_y() {
  return ComplexMatrix::from_rows({{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}});
}

inline ComplexMatrix sigma_z() {
  return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
}

/// The spin state used by the direct protocol: projector onto (sqrt3/2, 1/2).
inline ComplexMatrix rho_nought() {
  const double s3 = std::sqrt(3.0);
  return ComplexMatrix::from_rows({{0.75, s3 / 4.0}, {s3 / 4.0, 0.25}});
}

/// Bell-type diagonal state (|BB> + |SS>)(<BB| + <SS|) / 2.
inline qgs::DensityMatrix ges_state() {
  const double r = std::sqrt(0.5);
  return qgs::DensityMatrix::pure({r, 0.0, 0.0, r});
}

/// Anti-diagonal Bell-type state (|BS> + |SB>)(<BS| + <SB|) / 2.
inline qgs::DensityMatrix ges_state_anti() {
  const double r = std::sqrt(0.5);
  return qgs::DensityMatrix::pure({0.0, r, r, 0.0});
}

/// Pure joint basis state |index><index| on a dim-4 joint space.
inline qgs::DensityMatrix basis_state4(int index) {
  std::vector<cplx> amp(4, 0.0);
  amp[index] = 1.0;
  return qgs::DensityMatrix::pure(amp);
}

inline ComplexMatrix random_hermitian(int dim, qgs::Rng& rng) {
  ComplexMatrix g(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = rng.next_complex_gaussian();
  return qgs::hermitize(g);
}

/// Independent oracle for the partial trace: contracts indices directly from
/// the definition, without the library's digit helpers.
inline ComplexMatrix partial_trace_oracle_first(const ComplexMatrix& m, int d1, int d2) {
  // keeps the first factor of a d1 x d2 split
  ComplexMatrix out(d1);
  for (int a = 0; a < d1; ++a)
    for (int ap = 0; ap < d1; ++ap)
      for (int b = 0; b < d2; ++b) out(a, ap) += m(a * d2 + b, ap * d2 + b);
  return out;
}

inline ComplexMatrix partial_trace_oracle_second(const ComplexMatrix& m, int d1, int d2) {
  ComplexMatrix out(d2);
  for (int b = 0; b < d2; ++b)
    for (int bp = 0; bp < d2; ++bp)
      for (int a = 0; a < d1; ++a) out(b, bp) += m(a * d2 + b, a * d2 + bp);
  return out;
}

/// Bimatrix expectation sum_{a,b} p_a q_b G_ab, written out directly.
inline double bimatrix_expectation(const qgs::ClassicalBimatrix& g, double p1_b, double p2_b,
                                   int player) {
  const double p[2] = {p1_b, 1.0 - p1_b};
  const double q[2] = {p2_b, 1.0 - p2_b};
  double e = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) e += p[a] * q[b] * g.at(a, b)[player];
  return e;
}

}  // namespace qgs_test
