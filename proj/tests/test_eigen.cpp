// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "qgs/eigen.hpp"
#include "qgs/game.hpp"
#include "qgs/rng.hpp"
#include "test_support.hpp"

using namespace qgs;
using namespace qgs_test;

namespace {

ComplexMatrix reconstruct(const EigenDecomposition& d) {
  const ComplexMatrix v = d.vector_matrix();
  ComplexMatrix lambda(d.dim());
  for (int i = 0; i < d.dim(); ++i) lambda(i, i) = d.eigenvalues[i];
  return matmul(matmul(v, lambda), dagger(v));
}

double gram_deviation(const EigenDecomposition& d) {
  const ComplexMatrix v = d.vector_matrix();
  return max_abs_diff(matmul(dagger(v), v), ComplexMatrix::identity(d.dim()));
}

}  // namespace

TEST_CASE("eig_hermitian: sigma_x spectrum") {
  const EigenDecomposition d = eig_hermitian(sigma_x());
  REQUIRE(d.dim() == 2);
  CHECK(d.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-14));
  // phase convention: leading component real positive
  CHECK(d.eigenvectors[0][0].real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(d.eigenvectors[0][0].imag() == doctest::Approx(0.0));
}

TEST_CASE("eig_hermitian: built-in payoff matrix has spectrum {4, 2, 0, 0}") {
  // rank-one decomposition over (|BB>+|SS>) and (|BS>+|SB>) gives
  // eigenvalues 2*e1 and 2*e2 plus two zeros
  const EigenDecomposition d = eig_hermitian(artificial_payoff_matrix(2.0, 1.0));
  REQUIRE(d.dim() == 4);
  CHECK(d.eigenvalues[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(d.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(d.eigenvalues[2]) < 1e-12);
  CHECK(std::abs(d.eigenvalues[3]) < 1e-12);

  const double r = std::sqrt(0.5);
  CHECK(std::abs(d.eigenvectors[0][0] - cplx{r}) < 1e-12);
  CHECK(std::abs(d.eigenvectors[0][1]) < 1e-12);
  CHECK(std::abs(d.eigenvectors[0][2]) < 1e-12);
  CHECK(std::abs(d.eigenvectors[0][3] - cplx{r}) < 1e-12);
}

TEST_CASE("eig_hermitian: random reconstruction and orthonormality up to dim 16") {
  Rng rng(101);
  for (int dim : {2, 4, 8, 16}) {
    for (int trial = 0; trial < 5; ++trial) {
      const ComplexMatrix m = random_hermitian(dim, rng);
      const EigenDecomposition d = eig_hermitian(m);
      CHECK(frobenius_distance(reconstruct(d), m) <= 1e-10);
      CHECK(gram_deviation(d) <= 1e-10);
      for (int k = 1; k < d.dim(); ++k) CHECK(d.eigenvalues[k - 1] >= d.eigenvalues[k]);
    }
  }
}

TEST_CASE("eig_hermitian: deterministic output and fixed phases") {
  Rng rng(55);
  const ComplexMatrix m = random_hermitian(6, rng);
  const EigenDecomposition a = eig_hermitian(m);
  const EigenDecomposition b = eig_hermitian(m);
  for (int k = 0; k < a.dim(); ++k) {
    CHECK(a.eigenvalues[k] == b.eigenvalues[k]);
    for (int r = 0; r < a.dim(); ++r) CHECK(a.eigenvectors[k][r] == b.eigenvectors[k][r]);
    // first component of magnitude > 1e-8 sits on the positive real axis
    for (int r = 0; r < a.dim(); ++r) {
      if (std::abs(a.eigenvectors[k][r]) > 1e-8) {
        CHECK(a.eigenvectors[k][r].real() > 0.0);
        CHECK(std::abs(a.eigenvectors[k][r].imag()) < 1e-12);
        break;
      }
    }
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  ComplexMatrix m(2);
  m(0, 1) = cplx{1.0, 0.0};
  m(1, 0) = cplx{0.5, 0.0};
  CHECK_THROWS_AS(eig_hermitian(m), ValidationError);
}

TEST_CASE("eig_hermitian handles dim 1 and diagonal matrices") {
  ComplexMatrix one(1);
  one(0, 0) = 3.5;
  const EigenDecomposition d1 = eig_hermitian(one);
  CHECK(d1.eigenvalues[0] == 3.5);

  const ComplexMatrix diag = ComplexMatrix::from_rows(
      {{1.0, 0.0, 0.0, 0.0}, {0.0, 4.0, 0.0, 0.0}, {0.0, 0.0, 2.0, 0.0}, {0.0, 0.0, 0.0, 3.0}});
  const EigenDecomposition d = eig_hermitian(diag);
  CHECK(d.eigenvalues == std::vector<double>{4.0, 3.0, 2.0, 1.0});
  CHECK(std::abs(d.eigenvectors[0][1] - cplx{1.0}) < 1e-14);
}

TEST_CASE("expm_hermitian: scale zero, diagonal case, and sigma_x at ln 2") {
  Rng rng(77);
  const ComplexMatrix h = random_hermitian(4, rng);
  CHECK(max_abs_diff(expm_hermitian(h, 0.0), ComplexMatrix::identity(4)) < 1e-12);

  const ComplexMatrix diag = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 2.0}});
  const ComplexMatrix e = expm_hermitian(diag, 1.0);
  CHECK(e(0, 0).real() == doctest::Approx(std::exp(1.0)).epsilon(1e-13));
  CHECK(e(1, 1).real() == doctest::Approx(std::exp(2.0)).epsilon(1e-13));
  CHECK(std::abs(e(0, 1)) < 1e-13);

  // exp(ln2 * sigma_x) = cosh(ln2) I + sinh(ln2) sigma_x = [[5/4,3/4],[3/4,5/4]]
  const ComplexMatrix ex = expm_hermitian(sigma_x(), std::log(2.0));
  CHECK(ex(0, 0).real() == doctest::Approx(1.25).epsilon(1e-13));
  CHECK(ex(0, 1).real() == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(ex(1, 0).real() == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(ex(1, 1).real() == doctest::Approx(1.25).epsilon(1e-13));
}
