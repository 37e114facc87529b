// SPDX-License-Identifier: Apache-2.0
//
// Global equilibrium states: system states that maximize every player's
// payoff over all system states simultaneously. The maximizer of Tr(rho H)
// over densities is the projector onto H's top eigenvector, so the candidate
// comes straight out of the eigendecomposition; for the built-in game it is
// a Bell-type entangled strategy state. Also here: entanglement diagnostics
// (marginal purity, distance to the marginal product) and the payoff gap
// opened by destroying the correlation between the players.

#pragma once

#include <cstdint>
#include <vector>

#include "qgs/eigen.hpp"
#include "qgs/game.hpp"
#include "qgs/rng.hpp"

namespace qgs {

struct GESReport {
  DensityMatrix state;                // projector onto H^1's top eigenvector
  std::vector<double> payoffs;        // E^i at that state
  std::vector<double> global_margins; // E^i - lambda_max(H^i)
  double top_eigenvalue = 0.0;        // lambda_max(H^1)
  bool degenerate = false;            // top eigenvalue of H^1 has multiplicity > 1
  bool common = false;                // every player is simultaneously maximized
};

/// Builds the global-equilibrium candidate from player 1's payoff operator
/// and verifies it maximizes every player. When the top eigenvalue is
/// degenerate the deterministic representative from the eigensolver's
/// tie-break is returned and flagged. `common` is false when some player's
/// operator is not maximized by the shared state (no common GES).
inline GESReport ges_solve(const GameDefinition& g, double tol = 1e-9) {
  const EigenDecomposition d = eig_hermitian(g.payoff_operator(0).matrix());
  const bool degenerate = d.dim() > 1 && d.eigenvalues[0] - d.eigenvalues[1] <= tol;

  GESReport report{DensityMatrix::pure(d.eigenvectors.front()), {}, {}, d.eigenvalues.front(),
                   degenerate, true};
  const StrategyProfile profile = StrategyProfile::joint(report.state, g.dims());
  for (int i = 0; i < g.n_players(); ++i) {
    const double e = payoff(profile, g, i);
    const double top = eig_hermitian(g.payoff_operator(i).matrix()).eigenvalues.front();
    report.payoffs.push_back(e);
    report.global_margins.push_back(e - top);
    if (e < top - tol) report.common = false;
  }
  return report;
}

struct IsGesReport {
  bool is_ges = false;                     // E^i >= lambda_max(H^i) - tol for all i
  std::vector<double> margins;             // E^i - lambda_max(H^i)
  std::vector<double> max_sampled_payoff;  // per player, over the random states
  bool sampling_consistent = false;        // no sampled state beat rho for any player
  int n_samples = 0;
  std::uint64_t seed = 0;
};

/// Exact global-equilibrium test: rho is a GES iff E^i(rho) reaches
/// lambda_max(H^i) for every player, since that eigenvalue is the maximum of
/// Tr(sigma H^i) over all densities sigma. A seeded Ginibre sample is run as
/// an independent cross-check on the eigensolver.
inline IsGesReport is_ges(const DensityMatrix& rho, const GameDefinition& g, double tol = 1e-9,
                          int n_samples = 200, std::uint64_t seed = 42) {
  if (rho.dim() != g.joint_dim())
    throw ValidationError("is_ges: state dim " + std::to_string(rho.dim()) +
                          " does not match joint dim " + std::to_string(g.joint_dim()));
  if (n_samples < 0) throw ValidationError("is_ges: n_samples must be >= 0");

  IsGesReport report;
  report.n_samples = n_samples;
  report.seed = seed;
  report.is_ges = true;
  const StrategyProfile profile = StrategyProfile::joint(rho, g.dims());
  std::vector<double> own_payoffs;
  for (int i = 0; i < g.n_players(); ++i) {
    const double e = payoff(profile, g, i);
    const double top = eig_hermitian(g.payoff_operator(i).matrix()).eigenvalues.front();
    own_payoffs.push_back(e);
    report.margins.push_back(e - top);
    if (e < top - tol) report.is_ges = false;
  }

  report.sampling_consistent = true;
  report.max_sampled_payoff.assign(g.n_players(), -HUGE_VAL);
  Rng seeder(seed);
  for (int k = 0; k < n_samples; ++k) {
    const DensityMatrix sigma = DensityMatrix::from_matrix(
        random_density(g.joint_dim(), seeder.next_u64()));
    const StrategyProfile sample = StrategyProfile::joint(sigma, g.dims());
    for (int i = 0; i < g.n_players(); ++i) {
      const double e = payoff(sample, g, i);
      report.max_sampled_payoff[i] = std::max(report.max_sampled_payoff[i], e);
      if (e > own_payoffs[i] + tol && report.is_ges) report.sampling_consistent = false;
    }
  }
  if (n_samples == 0) report.max_sampled_payoff.assign(g.n_players(), 0.0);
  return report;
}

struct EntanglementReport {
  std::vector<double> marginal_purities;  // Tr(rho_i^2) per player
  double product_distance = 0.0;          // Frobenius distance to the marginal product
  bool is_product = false;                // product_distance <= tol
};

/// Marginal purities and the distance between rho and the product of its
/// marginals. Correlated states (entangled or classically correlated) have
/// positive distance; the purity of a marginal drops below 1 exactly when
/// that player's reduced state is mixed.
inline EntanglementReport entanglement_report(const DensityMatrix& rho,
                                              const std::vector<int>& dims, double tol = 1e-9) {
  const StrategyProfile profile = StrategyProfile::joint(rho, dims);
  EntanglementReport report;
  ComplexMatrix product(1);
  product(0, 0) = 1.0;
  for (int i = 0; i < profile.n_players(); ++i) {
    const DensityMatrix m = marginal(profile, i);
    report.marginal_purities.push_back(m.purity());
    product = kron(product, m.matrix());
  }
  report.product_distance = frobenius_distance(rho.matrix(), product);
  report.is_product = report.product_distance <= tol;
  return report;
}

/// Per-player payoff loss from replacing rho by the product of its
/// marginals: E^i(rho) - E^i(rho_1 (x) rho_2). Positive for both players
/// means breaking the inter-player correlation hurts everyone.
inline std::vector<double> decoherence_gap(const DensityMatrix& rho, const GameDefinition& g) {
  if (g.n_players() != 2) throw ValidationError("decoherence_gap: defined for 2-player games");
  if (rho.dim() != g.joint_dim())
    throw ValidationError("decoherence_gap: state dim does not match the game");
  const StrategyProfile joint = StrategyProfile::joint(rho, g.dims());
  const StrategyProfile product =
      StrategyProfile::product({marginal(joint, 0), marginal(joint, 1)});
  std::vector<double> gaps;
  for (int i = 0; i < 2; ++i) gaps.push_back(payoff(joint, g, i) - payoff(product, g, i));
  return gaps;
}

}  // namespace qgs
