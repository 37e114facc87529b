// SPDX-License-Identifier: Apache-2.0
//
// Pure quantum strategies for the built-in game: the one-parameter unitary
// family U(theta) = cos(theta) B + i sin(theta) S, best responses read off
// the maximal eigenvector of the reduced payoff matrix, and verification of
// the mutual-best-response family (theta, -theta).

#pragma once

#include <cmath>
#include <vector>

#include "qgs/eigen.hpp"
#include "qgs/game.hpp"

namespace qgs {

/// Reduces an angle mod pi into the canonical range (-pi/2, pi/2].
/// U(theta + pi) = -U(theta) induces the same density, so angles are
/// representatives of this quotient.
inline double canonical_angle(double theta) {
  double t = std::fmod(theta, M_PI);
  if (t <= -M_PI / 2.0) t += M_PI;
  if (t > M_PI / 2.0) t -= M_PI;
  return t;
}

/// Distance between angles modulo pi (at most pi/2).
inline double angle_distance_mod_pi(double a, double b) {
  return std::abs(canonical_angle(a - b));
}

/// [[cos t, i sin t], [i sin t, cos t]]; unitary for every t.
inline ComplexMatrix unitary_strategy(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return ComplexMatrix::from_rows({{cplx{c, 0.0}, cplx{0.0, s}}, {cplx{0.0, s}, cplx{c, 0.0}}});
}

/// Density of the strategy vector (cos t, i sin t) in the {|B>, |S>} basis.
inline DensityMatrix strategy_state(double theta) {
  return DensityMatrix::pure({cplx{std::cos(theta), 0.0}, cplx{0.0, std::sin(theta)}});
}

struct BestResponse {
  double theta = 0.0;   // canonical range (-pi/2, pi/2]
  double payoff = 0.0;  // top eigenvalue of the reduced payoff matrix
};

/// Best reply of a player whose opponent plays the strategy state U(theta_opp),
/// on a 2-player game with 2 strategies per player. The maximal eigenvector
/// of the reduced payoff matrix must itself lie in the unitary family
/// (cos t, i sin t); if the top eigenvalue is tied the response is not unique
/// and a DegeneracyError is thrown, and if the eigenvector falls outside the
/// family (a payoff operator unlike the built-in one) a StructuralError is.
inline BestResponse best_response_theta(double theta_opp, const GameDefinition& g) {
  if (g.n_players() != 2 || g.dims() != std::vector<int>{2, 2})
    throw ValidationError("best_response_theta: needs a 2-player game with 2x2 strategy spaces");
  const ComplexMatrix h_reduced = reduced_payoff({strategy_state(theta_opp)}, g, 0);
  const EigenDecomposition d = eig_hermitian(h_reduced);
  if (d.eigenvalues[0] - d.eigenvalues[1] <= 1e-9)
    throw DegeneracyError("best_response_theta: top eigenvalue of the reduced payoff is degenerate "
                          "(gap " + std::to_string(d.eigenvalues[0] - d.eigenvalues[1]) + ")");
  const std::vector<cplx>& v = d.eigenvectors[0];

  double theta;
  if (std::abs(v[0]) <= 1e-8) {
    theta = M_PI / 2.0;  // (0, e^{i phi}) is U(pi/2) up to phase
  } else {
    // phase convention puts v[0] on the positive real axis
    if (std::abs(v[0].imag()) > 1e-9 || std::abs(v[1].real()) > 1e-9)
      throw StructuralError(
          "best_response_theta: top eigenvector is not of the form (cos t, i sin t); "
          "residual " + std::to_string(std::abs(v[1].real())));
    theta = std::atan2(v[1].imag(), v[0].real());
  }
  return {canonical_angle(theta), d.eigenvalues[0]};
}

struct NEFamilySample {
  double theta = 0.0;          // opponent plays U(theta)
  double best_response = 0.0;  // computed best reply, expected -theta (mod pi)
  double payoff1 = 0.0;        // payoffs at the profile (theta, -theta)
  double payoff2 = 0.0;
};

struct QuantumNEFamilyReport {
  std::vector<NEFamilySample> samples;
  double max_angle_deviation = 0.0;   // of best_response from -theta, mod pi
  double max_payoff_deviation = 0.0;  // of either payoff from epsilon1
  double expected_payoff = 0.0;       // epsilon1
};

/// Samples theta over (-pi/2, pi/2] and verifies that U(-theta) is the best
/// reply to U(theta) and that the profile (theta, -theta) pays epsilon1 to
/// both players. Requires the built-in game with epsilon1 > epsilon2.
inline QuantumNEFamilyReport verify_ne_family(const GameDefinition& g, int n_samples) {
  if (n_samples < 1) throw ValidationError("verify_ne_family: need n_samples >= 1");
  if (!g.params())
    throw ValidationError("verify_ne_family: game carries no (epsilon1, epsilon2) parameters");
  const double e1 = g.params()->epsilon1;
  if (e1 <= g.params()->epsilon2)
    throw ValidationError(
        "verify_ne_family: the (theta, -theta) family is an equilibrium only for "
        "epsilon1 > epsilon2");

  QuantumNEFamilyReport report;
  report.expected_payoff = e1;
  for (int k = 0; k < n_samples; ++k) {
    const double theta = -M_PI / 2.0 + M_PI * (k + 1) / n_samples;
    const BestResponse br = best_response_theta(theta, g);
    const StrategyProfile profile =
        StrategyProfile::product({strategy_state(theta), strategy_state(-theta)});
    NEFamilySample sample;
    sample.theta = theta;
    sample.best_response = br.theta;
    sample.payoff1 = payoff(profile, g, 0);
    sample.payoff2 = payoff(profile, g, 1);
    report.max_angle_deviation =
        std::max(report.max_angle_deviation, angle_distance_mod_pi(br.theta, -theta));
    report.max_payoff_deviation =
        std::max({report.max_payoff_deviation, std::abs(sample.payoff1 - e1),
                  std::abs(sample.payoff2 - e1)});
    report.samples.push_back(sample);
  }
  return report;
}

/// Gibbs (softened best) response exp(beta H_R) / Tr exp(beta H_R).
/// At beta = 0 this is the maximally mixed state; as beta grows it sharpens
/// toward the projector onto the top eigenspace; on diagonal H_R it
/// reproduces the classical logit response componentwise. The exponentials
/// are shifted by the top eigenvalue, which cancels in the normalization and
/// keeps large beta finite.
inline DensityMatrix gibbs_response(const ComplexMatrix& h_reduced, double beta) {
  if (beta < 0.0) throw ValidationError("gibbs_response: beta must be >= 0");
  const EigenDecomposition d = eig_hermitian(h_reduced);
  const double top = d.eigenvalues.front();
  double z = 0.0;
  for (double lam : d.eigenvalues) z += std::exp(beta * (lam - top));
  const ComplexMatrix rho =
      spectral_map(d, [&](double lam) { return std::exp(beta * (lam - top)) / z; });
  return DensityMatrix::from_matrix(hermitize(rho));
}

}  // namespace qgs
