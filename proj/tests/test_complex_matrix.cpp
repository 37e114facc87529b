// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "qgs/complex_matrix.hpp"
#include "qgs/rng.hpp"
#include "test_support.hpp"

using namespace qgs;
using namespace qgs_test;

TEST_CASE("dagger: identity, textbook entry, and a Hermitian state") {
  CHECK(max_abs_diff(dagger(ComplexMatrix::identity(2)), ComplexMatrix::identity(2)) == 0.0);

  const ComplexMatrix m = ComplexMatrix::from_rows({{0.0, cplx{0.0, 1.0}}, {0.0, 0.0}});
  const ComplexMatrix expected = ComplexMatrix::from_rows({{0.0, 0.0}, {cplx{0.0, -1.0}, 0.0}});
  CHECK(max_abs_diff(dagger(m), expected) == 0.0);

  CHECK(max_abs_diff(dagger(rho_nought()), rho_nought()) == 0.0);
}

TEST_CASE("dagger is an involution on random matrices") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix m(5);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) m(r, c) = rng.next_complex_gaussian();
    CHECK(max_abs_diff(dagger(dagger(m)), m) == 0.0);
  }
}

TEST_CASE("matmul: identity law, involution, and dimension mismatch") {
  const ComplexMatrix m = ComplexMatrix::from_rows({{1.0, cplx{2.0, 1.0}}, {cplx{0.0, -3.0}, 4.0}});
  CHECK(max_abs_diff(matmul(ComplexMatrix::identity(2), m), m) == 0.0);
  CHECK(max_abs_diff(matmul(sigma_x(), sigma_x()), ComplexMatrix::identity(2)) == 0.0);
  CHECK_THROWS_AS(matmul(ComplexMatrix::identity(2), ComplexMatrix::identity(3)), ValidationError);
}

TEST_CASE("matmul matches the angle-addition law of the strategy unitaries") {
  // U(t) = [[cos t, i sin t], [i sin t, cos t]]; U(pi/8)^2 should be U(pi/4)
  auto u = [](double t) {
    return ComplexMatrix::from_rows(
        {{std::cos(t), cplx{0.0, std::sin(t)}}, {cplx{0.0, std::sin(t)}, std::cos(t)}});
  };
  CHECK(max_abs_diff(matmul(u(M_PI / 8), u(M_PI / 8)), u(M_PI / 4)) < 1e-15);
}

TEST_CASE("matmul associates on random triples") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexMatrix a(4), b(4), c(4);
    for (int r = 0; r < 4; ++r)
      for (int col = 0; col < 4; ++col) {
        a(r, col) = rng.next_complex_gaussian();
        b(r, col) = rng.next_complex_gaussian();
        c(r, col) = rng.next_complex_gaussian();
      }
    CHECK(max_abs_diff(matmul(matmul(a, b), c), matmul(a, matmul(b, c))) < 1e-12);
  }
}

TEST_CASE("trace: identity, the spin state, and the built-in payoff matrix") {
  CHECK(trace(ComplexMatrix::identity(4)) == cplx{4.0, 0.0});
  CHECK(std::abs(trace(rho_nought()) - cplx{1.0, 0.0}) == 0.0);
  // diagonal 2 + 1 + 1 + 2
  const ComplexMatrix h = artificial_payoff_matrix(2.0, 1.0);
  CHECK(std::abs(trace(h) - cplx{6.0, 0.0}) == 0.0);
}

TEST_CASE("kron: identity, basis ordering, and trace multiplicativity") {
  CHECK(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                     ComplexMatrix::identity(4)) == 0.0);

  // |B><B| (x) |S><S| must land at joint index 1 = |BS>
  const ComplexMatrix bb = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
  const ComplexMatrix ss = ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
  const ComplexMatrix joint = kron(bb, ss);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(joint(r, c) == ((r == 1 && c == 1) ? cplx{1.0} : cplx{}));

  CHECK(std::abs(trace(kron(rho_nought(), ComplexMatrix::identity(2))) - cplx{2.0, 0.0}) < 1e-15);
}

TEST_CASE("kron index convention is exact on random factors") {
  Rng rng(3);
  ComplexMatrix a(3), b(2);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = rng.next_complex_gaussian();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) b(r, c) = rng.next_complex_gaussian();
  const ComplexMatrix k = kron(a, b);
  for (int ar = 0; ar < 3; ++ar)
    for (int br = 0; br < 2; ++br)
      for (int ac = 0; ac < 3; ++ac)
        for (int bc = 0; bc < 2; ++bc)
          CHECK(k(ar * 2 + br, ac * 2 + bc) == a(ar, ac) * b(br, bc));
}

TEST_CASE("partial_trace: product identity against the direct contraction") {
  Rng rng(19);
  for (int d1 = 2; d1 <= 4; ++d1)
    for (int d2 = 2; d2 <= 4; ++d2) {
      ComplexMatrix a(d1), b(d2);
      for (int r = 0; r < d1; ++r)
        for (int c = 0; c < d1; ++c) a(r, c) = rng.next_complex_gaussian();
      for (int r = 0; r < d2; ++r)
        for (int c = 0; c < d2; ++c) b(r, c) = rng.next_complex_gaussian();
      const ComplexMatrix joint = kron(a, b);

      const ComplexMatrix kept_first = partial_trace(joint, {d1, d2}, {0});
      CHECK(max_abs_diff(kept_first, trace(b) * a) < 1e-12);
      CHECK(max_abs_diff(kept_first, partial_trace_oracle_first(joint, d1, d2)) < 1e-14);

      const ComplexMatrix kept_second = partial_trace(joint, {d1, d2}, {1});
      CHECK(max_abs_diff(kept_second, trace(a) * b) < 1e-12);
      CHECK(max_abs_diff(kept_second, partial_trace_oracle_second(joint, d1, d2)) < 1e-14);
    }
}

TEST_CASE("partial_trace: Bell-type state has maximally mixed marginals") {
  const ComplexMatrix rho = ges_state().matrix();
  const ComplexMatrix half_identity = cplx{0.5} * ComplexMatrix::identity(2);
  CHECK(max_abs_diff(partial_trace(rho, {2, 2}, {1}), half_identity) < 1e-15);
  CHECK(max_abs_diff(partial_trace(rho, {2, 2}, {0}), half_identity) < 1e-15);

  const ComplexMatrix mixed = cplx{0.25} * ComplexMatrix::identity(4);
  CHECK(max_abs_diff(partial_trace(mixed, {2, 2}, {0}), half_identity) < 1e-15);
}

TEST_CASE("partial_trace preserves the full trace on any split") {
  Rng rng(23);
  ComplexMatrix m(8);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) m(r, c) = rng.next_complex_gaussian();
  const cplx full = trace(m);
  CHECK(std::abs(trace(partial_trace(m, {2, 4}, {0})) - full) < 1e-12);
  CHECK(std::abs(trace(partial_trace(m, {2, 4}, {1})) - full) < 1e-12);
  CHECK(std::abs(trace(partial_trace(m, {2, 2, 2}, {1})) - full) < 1e-12);
  CHECK(std::abs(trace(partial_trace(m, {2, 2, 2}, {0, 2})) - full) < 1e-12);
}

TEST_CASE("partial_trace rejects inconsistent dims and empty keep sets") {
  const ComplexMatrix m = ComplexMatrix::identity(4);
  CHECK_THROWS_AS(partial_trace(m, {2, 3}, {0}), ValidationError);
  CHECK_THROWS_AS(partial_trace(m, {2, 2}, {}), ValidationError);
  CHECK_THROWS_AS(partial_trace(m, {2, 2}, {2}), ValidationError);
}

TEST_CASE("frobenius_distance: zero on equal, known gaps") {
  const ComplexMatrix rho = ges_state().matrix();
  CHECK(frobenius_distance(rho, rho) == 0.0);
  // distance between the Bell-type state and I/4: four diagonal entries of
  // 1/4 and two off-diagonal entries of 1/2 -> sqrt(4/16 + 2/4) = sqrt(0.75)
  CHECK(frobenius_distance(rho, cplx{0.25} * ComplexMatrix::identity(4)) ==
        doctest::Approx(0.8660254037844386).epsilon(1e-14));
  CHECK(frobenius_distance(sigma_x(), ComplexMatrix::identity(2)) == 2.0);
  CHECK_THROWS_AS(frobenius_distance(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
                  ValidationError);
}

TEST_CASE("matrix factories reject malformed input") {
  CHECK_THROWS_AS(ComplexMatrix(0), ValidationError);
  CHECK_THROWS_AS(ComplexMatrix::from_rows({{1.0, 2.0}, {3.0}}), ValidationError);
  CHECK_THROWS_AS(ComplexMatrix::from_flat(2, {1.0, 2.0, 3.0}), ValidationError);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(ComplexMatrix::from_rows({{inf, 0.0}, {0.0, 0.0}}), ValidationError);
  CHECK_THROWS_AS(ComplexMatrix::from_flat(1, {cplx{0.0, NAN}}), ValidationError);
}

TEST_CASE("hermitize and hermiticity_violation") {
  ComplexMatrix m(2);
  m(0, 0) = cplx{1.0, 1e-3};
  m(0, 1) = cplx{2.0, 1.0};
  m(1, 0) = cplx{2.0, -1.0};
  m(1, 1) = 3.0;
  CHECK(hermiticity_violation(m) == doctest::Approx(2e-3).epsilon(1e-9));
  const ComplexMatrix h = hermitize(m);
  CHECK(hermiticity_violation(h) == 0.0);
  CHECK(h(0, 0) == cplx{1.0, 0.0});
}
