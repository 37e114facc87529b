// SPDX-License-Identifier: Apache-2.0
//
// Dense square complex matrices plus the small linear-algebra kernel used
// everywhere else: products, Kronecker products, traces, partial traces.
// Matrices in this library stay tiny (joint strategy spaces, dim <= 16),
// so everything is plain row-major storage with value semantics.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "qgs/errors.hpp"

namespace qgs {

using cplx = std::complex<double>;

namespace detail {
inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace detail

/// Square complex matrix, row-major. Entries are kept finite: factory
/// functions reject NaN/infinity on the way in.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim) : dim_(dim), entries_(static_cast<std::size_t>(dim) * dim) {
    if (dim < 1) throw ValidationError("ComplexMatrix: dim must be >= 1, got " + std::to_string(dim));
  }

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

  /// Builds from nested rows; all rows must have length dim.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const int n = static_cast<int>(rows.size());
    ComplexMatrix m(n);
    int r = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n)
        throw ValidationError("ComplexMatrix: row " + std::to_string(r) + " has length " +
                              std::to_string(row.size()) + ", expected " + std::to_string(n));
      int c = 0;
      for (cplx v : row) m(r, c++) = v;
      ++r;
    }
    m.require_finite();
    return m;
  }

  /// Builds from a flat row-major list of dim*dim entries.
  static ComplexMatrix from_flat(int dim, std::vector<cplx> entries) {
    if (static_cast<int>(entries.size()) != dim * dim)
      throw ValidationError("ComplexMatrix: expected " + std::to_string(dim * dim) +
                            " entries, got " + std::to_string(entries.size()));
    ComplexMatrix m(dim);
    m.entries_ = std::move(entries);
    m.require_finite();
    return m;
  }

  int dim() const { return dim_; }

  cplx& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r) * dim_ + c]; }
  cplx operator()(int r, int c) const { return entries_[static_cast<std::size_t>(r) * dim_ + c]; }

  const std::vector<cplx>& data() const { return entries_; }

  void require_finite() const {
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c)
        if (!detail::is_finite((*this)(r, c)))
          throw ValidationError("ComplexMatrix: non-finite entry at (" + std::to_string(r) + "," +
                                std::to_string(c) + ")");
  }

 private:
  int dim_;
  std::vector<cplx> entries_;
};

inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim())
    throw ValidationError(std::string(op) + ": dimension mismatch " + std::to_string(a.dim()) +
                          " vs " + std::to_string(b.dim()));
}

/// Conjugate transpose.
inline ComplexMatrix dagger(const ComplexMatrix& m) {
  ComplexMatrix out(m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out(r, c) = std::conj(m(c, r));
  return out;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matmul");
  const int n = a.dim();
  ComplexMatrix out(n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx{}) continue;
      for (int c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

inline cplx trace(const ComplexMatrix& m) {
  cplx t = 0.0;
  for (int i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

/// Kronecker product. Index convention: joint index (a, b) of A (x) B maps to
/// a * B.dim + b, i.e. the left factor is the major index. With players
/// ordered left to right this puts the joint basis in the order
/// |BB>, |BS>, |SB>, |SS>.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int da = a.dim(), db = b.dim();
  ComplexMatrix out(da * db);
  for (int ar = 0; ar < da; ++ar)
    for (int br = 0; br < db; ++br)
      for (int ac = 0; ac < da; ++ac)
        for (int bc = 0; bc < db; ++bc) out(ar * db + br, ac * db + bc) = a(ar, ac) * b(br, bc);
  return out;
}

namespace detail {
/// Row-major digits of a joint index for the given factor dims.
inline void decompose_index(int index, const std::vector<int>& dims, std::vector<int>& digits) {
  digits.resize(dims.size());
  for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
    digits[f] = index % dims[f];
    index /= dims[f];
  }
}

inline int compose_index(const std::vector<int>& digits, const std::vector<int>& dims) {
  int idx = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) idx = idx * dims[f] + digits[f];
  return idx;
}
}  // namespace detail

/// Traces out every tensor factor not listed in `keep` (0-based factor
/// indices). Kept factors stay in their original order. The ordinary trace
/// is preserved: trace(result) == trace(m).
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                                   std::vector<int> keep) {
  int prod = 1;
  for (int d : dims) {
    if (d < 1) throw ValidationError("partial_trace: factor dims must be >= 1");
    prod *= d;
  }
  if (prod != m.dim())
    throw ValidationError("partial_trace: factor dims multiply to " + std::to_string(prod) +
                          " but matrix dim is " + std::to_string(m.dim()));
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw ValidationError("partial_trace: keep set must be nonempty");
  for (int k : keep)
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw ValidationError("partial_trace: keep index " + std::to_string(k) + " out of range");

  std::vector<int> kept_dims;
  for (int k : keep) kept_dims.push_back(dims[k]);
  int kept_prod = 1;
  for (int d : kept_dims) kept_prod *= d;

  ComplexMatrix out(kept_prod);
  std::vector<int> rdig, cdig, rkept(keep.size()), ckept(keep.size());
  for (int r = 0; r < m.dim(); ++r) {
    detail::decompose_index(r, dims, rdig);
    for (int c = 0; c < m.dim(); ++c) {
      detail::decompose_index(c, dims, cdig);
      bool diagonal_on_traced = true;
      for (std::size_t f = 0; f < dims.size(); ++f) {
        if (std::find(keep.begin(), keep.end(), static_cast<int>(f)) == keep.end() &&
            rdig[f] != cdig[f]) {
          diagonal_on_traced = false;
          break;
        }
      }
      if (!diagonal_on_traced) continue;
      for (std::size_t i = 0; i < keep.size(); ++i) {
        rkept[i] = rdig[keep[i]];
        ckept[i] = cdig[keep[i]];
      }
      out(detail::compose_index(rkept, kept_dims), detail::compose_index(ckept, kept_dims)) +=
          m(r, c);
    }
  }
  return out;
}

inline double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const cplx& z : m.data()) s += std::norm(z);
  return std::sqrt(s);
}

/// sqrt of sum |A_jk - B_jk|^2. Symmetric, zero iff equal.
inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "frobenius_distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(s);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator+");
  ComplexMatrix out = a;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) out(r, c) += b(r, c);
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator-");
  ComplexMatrix out = a;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) out(r, c) -= b(r, c);
  return out;
}

inline ComplexMatrix operator*(cplx s, const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out(r, c) *= s;
  return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& m, cplx s) { return s * m; }

/// Largest |M_jk - conj(M_kj)| over all entry pairs.
inline double hermiticity_violation(const ComplexMatrix& m) {
  double worst = 0.0;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = r; c < m.dim(); ++c) worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10) {
  return hermiticity_violation(m) <= tol;
}

/// (M + M^dagger)/2; exact-Hermitian projection used to scrub roundoff.
inline ComplexMatrix hermitize(const ComplexMatrix& m) {
  ComplexMatrix out(m.dim());
  for (int r = 0; r < m.dim(); ++r) {
    out(r, r) = cplx{m(r, r).real(), 0.0};
    for (int c = r + 1; c < m.dim(); ++c) {
      const cplx v = 0.5 * (m(r, c) + std::conj(m(c, r)));
      out(r, c) = v;
      out(c, r) = std::conj(v);
    }
  }
  return out;
}

inline std::string to_string(const ComplexMatrix& m) {
  std::ostringstream os;
  for (int r = 0; r < m.dim(); ++r) {
    os << (r == 0 ? "[" : " ");
    for (int c = 0; c < m.dim(); ++c) {
      const cplx z = m(r, c);
      os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
      if (c + 1 < m.dim()) os << " ";
    }
    os << (r + 1 == m.dim() ? "]" : "\n");
  }
  return os.str();
}

}  // namespace qgs
