// SPDX-License-Identifier: Apache-2.0
//
// The operational form of the built-in game: a spin prepared in a fixed
// initial state, both players acting on it with unitaries from the
// cos/sin strategy family (composed player-2-after-player-1), and payoffs
// read out against diagonal scale matrices. On the unitary family this
// protocol produces exactly the same payoffs as the operator formalism with
// the built-in 4x4 payoff matrix, which cross_validate checks on a grid.

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qgs/game.hpp"
#include "qgs/quantum.hpp"

namespace qgs {

struct ManipulativeGame {
  DensityMatrix initial_state;                 // 2x2 spin state rho_0
  std::array<ComplexMatrix, 2> payoff_scales;  // diagonal real P^i, equal here
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
};

/// rho_0 is the projector onto (sqrt(3)/2, 1/2); both payoff scales are
/// (1/2) diag(3 e1 - e2, 3 e2 - e1).
inline ManipulativeGame build_manipulative(double e1, double e2) {
  const double s3 = std::sqrt(3.0);
  const DensityMatrix rho0 = DensityMatrix::from_matrix(
      ComplexMatrix::from_rows({{0.75, s3 / 4.0}, {s3 / 4.0, 0.25}}));
  const ComplexMatrix p = ComplexMatrix::from_rows(
      {{0.5 * (3.0 * e1 - e2), 0.0}, {0.0, 0.5 * (3.0 * e2 - e1)}});
  return ManipulativeGame{rho0, {p, p}, e1, e2};
}

/// E^i = Tr(P^i U rho_0 U^dagger) with U = U(theta2) U(theta1).
/// Equal for both players since the scales coincide.
inline std::pair<double, double> evaluate_direct(double theta1, double theta2,
                                                 const ManipulativeGame& m) {
  const ComplexMatrix u = matmul(unitary_strategy(theta2), unitary_strategy(theta1));
  const ComplexMatrix rho = matmul(matmul(u, m.initial_state.matrix()), dagger(u));
  std::pair<double, double> out;
  for (int i = 0; i < 2; ++i) {
    const cplx e = trace(matmul(m.payoff_scales[i], rho));
    if (std::abs(e.imag()) > 1e-10)
      throw NumericError("evaluate_direct: trace has imaginary residue " +
                         std::to_string(e.imag()));
    (i == 0 ? out.first : out.second) = e.real();
  }
  return out;
}

struct CrossValidationReport {
  double max_cross_error = 0.0;       // |E_direct - E_operator| over the grid
  double max_direct_vs_closed = 0.0;  // |E_direct - closed form|
  double max_operator_vs_closed = 0.0;
  int grid = 0;
};

/// Compares the direct protocol payoff against the operator payoff of the
/// product profile (strategy_state(t1), strategy_state(t2)) under the
/// built-in 4x4 payoff matrix, over an n x n grid of angles in
/// (-pi/2, pi/2]^2. Both must match e1 cos^2(t1+t2) + e2 sin^2(t1+t2).
inline CrossValidationReport cross_validate(double e1, double e2, int n) {
  if (n < 2) throw ValidationError("cross_validate: need n >= 2");
  const ManipulativeGame m = build_manipulative(e1, e2);
  PayoffOperator h(artificial_payoff_matrix(e1, e2));
  const GameDefinition g({{"B", "S"}, {"B", "S"}}, {h, h});

  CrossValidationReport report;
  report.grid = n;
  for (int a = 0; a < n; ++a) {
    const double t1 = -M_PI / 2.0 + M_PI * (a + 1) / n;
    const DensityMatrix rho1 = strategy_state(t1);
    for (int b = 0; b < n; ++b) {
      const double t2 = -M_PI / 2.0 + M_PI * (b + 1) / n;
      const double direct = evaluate_direct(t1, t2, m).first;
      const StrategyProfile profile = StrategyProfile::product({rho1, strategy_state(t2)});
      const double op = payoff(profile, g, 0);
      const double c = std::cos(t1 + t2), s = std::sin(t1 + t2);
      const double closed = e1 * c * c + e2 * s * s;
      report.max_cross_error = std::max(report.max_cross_error, std::abs(direct - op));
      report.max_direct_vs_closed =
          std::max(report.max_direct_vs_closed, std::abs(direct - closed));
      report.max_operator_vs_closed =
          std::max(report.max_operator_vs_closed, std::abs(op - closed));
    }
  }
  return report;
}

/// The identity and the swap: the two base strategies of the protocol.
inline std::vector<ComplexMatrix> default_strategy_basis() {
  return {ComplexMatrix::identity(2), ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}})};
}

/// {B, S, sigma_y, sigma_z}: the basis needed to expand arbitrary 2x2
/// strategy operators.
inline std::vector<ComplexMatrix> extended_strategy_basis() {
  auto basis = default_strategy_basis();
  basis.push_back(ComplexMatrix::from_rows({{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}));
  basis.push_back(ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}));
  return basis;
}

/// Exploratory bilinear expansion of the protocol payoff over a strategy
/// operator basis. Entry ((mu, alpha), (nu, beta)), with player 1 indices
/// major as in kron, is Tr(P sigma_alpha sigma_mu rho_0 sigma_nu sigma_beta):
/// the unique bilinear form that reproduces evaluate_direct when both
/// players' operators are expanded in the basis. Hermitian by construction.
/// Note this is one natural reconstruction of a joint payoff tensor, not the
/// only one; on the unitary family it agrees with the built-in 4x4 matrix
/// even though individual entries differ.
inline ComplexMatrix bilinear_tensor(double e1, double e2,
                                     const std::vector<ComplexMatrix>& basis) {
  if (basis.empty()) throw ValidationError("bilinear_tensor: empty basis");
  for (const ComplexMatrix& op : basis) {
    if (op.dim() != 2) throw ValidationError("bilinear_tensor: basis operators must be 2x2");
    if (!is_hermitian(op, 1e-12))
      throw ValidationError("bilinear_tensor: basis operators must be Hermitian");
  }
  const ManipulativeGame m = build_manipulative(e1, e2);
  const ComplexMatrix& p = m.payoff_scales[0];
  const ComplexMatrix& rho0 = m.initial_state.matrix();
  const int nb = static_cast<int>(basis.size());
  ComplexMatrix h(nb * nb);
  for (int mu = 0; mu < nb; ++mu)
    for (int alpha = 0; alpha < nb; ++alpha)
      for (int nu = 0; nu < nb; ++nu)
        for (int beta = 0; beta < nb; ++beta) {
          const ComplexMatrix left = matmul(p, matmul(basis[alpha], basis[mu]));
          const ComplexMatrix right = matmul(rho0, matmul(basis[nu], basis[beta]));
          h(mu * nb + alpha, nu * nb + beta) = trace(matmul(left, right));
        }
  return hermitize(h);
}

/// Quadratic form of the bilinear tensor on per-player coefficient vectors:
/// the payoff of the strategy pair with those basis expansions.
inline double tensor_payoff(const ComplexMatrix& tensor, const std::vector<cplx>& coeffs1,
                            const std::vector<cplx>& coeffs2) {
  const int nb = static_cast<int>(coeffs1.size());
  if (static_cast<int>(coeffs2.size()) != nb || tensor.dim() != nb * nb)
    throw ValidationError("tensor_payoff: coefficient/tensor size mismatch");
  cplx e = 0.0;
  for (int mu = 0; mu < nb; ++mu)
    for (int alpha = 0; alpha < nb; ++alpha)
      for (int nu = 0; nu < nb; ++nu)
        for (int beta = 0; beta < nb; ++beta)
          e += coeffs1[mu] * coeffs2[alpha] * std::conj(coeffs1[nu] * coeffs2[beta]) *
               tensor(mu * nb + alpha, nu * nb + beta);
  if (std::abs(e.imag()) > 1e-9)
    throw NumericError("tensor_payoff: imaginary residue " + std::to_string(e.imag()));
  return e.real();
}

}  // namespace qgs
