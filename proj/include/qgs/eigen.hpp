// SPDX-License-Identifier: Apache-2.0
//
// Hermitian eigendecomposition via cyclic Jacobi rotations. All matrices
// here are at most 16x16, so Jacobi's determinism and accuracy beat any
// fancier scheme. Each rotation annihilates one off-diagonal pair and
// strictly shrinks the off-diagonal Frobenius norm, so convergence is
// monotone and quadratic near the end.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qgs/complex_matrix.hpp"
#include "qgs/errors.hpp"

namespace qgs {

/// Eigenvalues sorted descending; eigenvectors[k] is the unit-norm column
/// paired with eigenvalues[k]. Each vector carries a fixed phase: its first
/// component of magnitude > 1e-8 is real and positive. Ties in the
/// eigenvalues are ordered by lexicographic comparison of the phase-fixed
/// vectors (real parts, then imaginary parts, componentwise).
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  std::vector<std::vector<cplx>> eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }

  /// Matrix whose k-th column is eigenvectors[k].
  ComplexMatrix vector_matrix() const {
    ComplexMatrix v(dim());
    for (int c = 0; c < dim(); ++c)
      for (int r = 0; r < dim(); ++r) v(r, c) = eigenvectors[c][r];
    return v;
  }
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

inline void phase_fix(std::vector<cplx>& v) {
  for (const cplx& z : v) {
    const double mag = std::abs(z);
    if (mag > 1e-8) {
      const cplx phase = std::conj(z) / mag;
      for (cplx& w : v) w *= phase;
      return;
    }
  }
}

inline bool lex_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace detail

inline constexpr int kJacobiSweepCap = 100;

/// Diagonalizes a Hermitian matrix. Inputs must be Hermitian within
/// `hermitian_tol` (max entry asymmetry); anything worse is rejected.
inline EigenDecomposition eig_hermitian(const ComplexMatrix& m, double hermitian_tol = 1e-10) {
  const double viol = hermiticity_violation(m);
  if (viol > hermitian_tol)
    throw ValidationError("eig_hermitian: matrix is not Hermitian (max |M_jk - conj(M_kj)| = " +
                          std::to_string(viol) + ")");
  const int n = m.dim();
  ComplexMatrix a = hermitize(m);
  ComplexMatrix v = ComplexMatrix::identity(n);

  // Off-diagonal target, scaled to the input's size so that machine-level
  // convergence is reachable for matrices with O(10) entries.
  const double off_tol = 1e-14 * std::max(1.0, frobenius_norm(a));
  const double rot_tol = off_tol / (4.0 * n);

  bool converged = (n == 1);
  for (int sweep = 0; sweep < kJacobiSweepCap && !converged; ++sweep) {
    if (detail::off_diagonal_norm(a) <= off_tol) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= rot_tol) continue;
        const cplx phase = apq / r;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // A <- J^dagger A J with J = [[c, s*phase], [-s*conj(phase), c]]
        // acting on the (p, q) plane.
        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(phase) * akq;
          a(k, q) = s * phase * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * std::conj(phase) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx{a(p, p).real(), 0.0};
        a(q, q) = cplx{a(q, q).real(), 0.0};

        for (int k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * std::conj(phase) * vkq;
          v(k, q) = s * phase * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && detail::off_diagonal_norm(a) > off_tol)
    throw NumericError("eig_hermitian: Jacobi did not converge within " +
                       std::to_string(kJacobiSweepCap) + " sweeps");

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(k, k).real();
    std::vector<cplx> col(n);
    double norm2 = 0.0;
    for (int r = 0; r < n; ++r) {
      col[r] = v(r, k);
      norm2 += std::norm(col[r]);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& z : col) z *= inv;
    detail::phase_fix(col);
    out.eigenvectors[k] = std::move(col);
  }

  // Descending order; ties resolved by vector lexicographic order so the
  // output is reproducible even in degenerate subspaces.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  double scale = 1.0;
  for (double lam : out.eigenvalues) scale = std::max(scale, std::abs(lam));
  const double tie_tol = 1e-12 * scale;
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (std::abs(out.eigenvalues[i] - out.eigenvalues[j]) > tie_tol)
      return out.eigenvalues[i] > out.eigenvalues[j];
    return detail::lex_less(out.eigenvectors[i], out.eigenvectors[j]);
  });
  EigenDecomposition sorted;
  sorted.eigenvalues.reserve(n);
  sorted.eigenvectors.reserve(n);
  for (int idx : order) {
    sorted.eigenvalues.push_back(out.eigenvalues[idx]);
    sorted.eigenvectors.push_back(std::move(out.eigenvectors[idx]));
  }
  return sorted;
}

/// Rank-one spectral sum: sum_k f(lambda_k) v_k v_k^dagger.
template <typename F>
inline ComplexMatrix spectral_map(const EigenDecomposition& d, F&& f) {
  const int n = d.dim();
  ComplexMatrix out(n);
  for (int k = 0; k < n; ++k) {
    const double w = f(d.eigenvalues[k]);
    if (w == 0.0) continue;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) out(r, c) += w * d.eigenvectors[k][r] * std::conj(d.eigenvectors[k][c]);
  }
  return out;
}

/// exp(scale * M) for Hermitian M, computed through the eigendecomposition.
/// The result is Hermitian positive definite.
inline ComplexMatrix expm_hermitian(const ComplexMatrix& m, double scale) {
  const EigenDecomposition d = eig_hermitian(m);
  return hermitize(spectral_map(d, [scale](double lam) { return std::exp(scale * lam); }));
}

}  // namespace qgs
