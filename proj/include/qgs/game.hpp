// SPDX-License-Identifier: Apache-2.0
//
// Domain types for operator games: Hermitian payoff operators on a joint
// strategy space, density-matrix strategy states, and the payoff /
// reduced-payoff / equilibrium machinery built on them.
//
// A game assigns each player a Hermitian payoff operator H^i on the joint
// space; a strategy profile is a density matrix rho on that space (a product
// of per-player states or an arbitrary, possibly entangled, joint state).
// Player i's payoff is Tr(rho H^i). Player i's reduced payoff matrix under
// fixed opponent states is the partial trace of (opponents (x) identity) H^i
// onto player i's factor; its top eigenvalue is the best payoff any
// unilateral deviation can reach.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qgs/complex_matrix.hpp"
#include "qgs/eigen.hpp"
#include "qgs/errors.hpp"

namespace qgs {

/// Hermitian operator on the joint strategy space.
class PayoffOperator {
 public:
  explicit PayoffOperator(ComplexMatrix m, double tol = 1e-10) : matrix_(std::move(m)) {
    const double viol = hermiticity_violation(matrix_);
    if (viol > tol)
      throw ValidationError("PayoffOperator: matrix is not Hermitian (violation " +
                            std::to_string(viol) + ")");
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  int dim() const { return matrix_.dim(); }

 private:
  ComplexMatrix matrix_;
};

/// Unit-trace positive-semidefinite operator: a mixed or pure strategy state.
class DensityMatrix {
 public:
  /// Full validation: Hermitian within tol, trace within tol of 1, and all
  /// eigenvalues >= -tol.
  static DensityMatrix from_matrix(ComplexMatrix m, double tol = 1e-10) {
    if (hermiticity_violation(m) > tol)
      throw ValidationError("DensityMatrix: matrix is not Hermitian within " + std::to_string(tol));
    const cplx tr = trace(m);
    if (std::abs(tr - cplx{1.0, 0.0}) > tol)
      throw ValidationError("DensityMatrix: trace is " + std::to_string(tr.real()) + "+" +
                            std::to_string(tr.imag()) + "i, expected 1");
    const EigenDecomposition d = eig_hermitian(hermitize(m), tol);
    if (d.eigenvalues.back() < -tol)
      throw ValidationError("DensityMatrix: negative eigenvalue " +
                            std::to_string(d.eigenvalues.back()));
    return DensityMatrix(hermitize(m));
  }

  /// Projector onto the given amplitude vector (normalized first).
  /// Valid by construction, so no spectral check is run.
  static DensityMatrix pure(const std::vector<cplx>& amplitudes) {
    const int n = static_cast<int>(amplitudes.size());
    if (n < 1) throw ValidationError("DensityMatrix::pure: empty amplitude vector");
    double norm2 = 0.0;
    for (const cplx& a : amplitudes) {
      if (!detail::is_finite(a)) throw ValidationError("DensityMatrix::pure: non-finite amplitude");
      norm2 += std::norm(a);
    }
    if (norm2 <= 0.0) throw ValidationError("DensityMatrix::pure: zero amplitude vector");
    ComplexMatrix m(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = amplitudes[r] * std::conj(amplitudes[c]) / norm2;
    return DensityMatrix(std::move(m));
  }

  /// Diagonal density from a classical probability vector (renormalized).
  static DensityMatrix classical(const std::vector<double>& probabilities) {
    const int n = static_cast<int>(probabilities.size());
    if (n < 1) throw ValidationError("DensityMatrix::classical: empty probability vector");
    double sum = 0.0;
    for (double p : probabilities) {
      if (!std::isfinite(p) || p < -1e-12)
        throw ValidationError("DensityMatrix::classical: probabilities must be nonnegative");
      sum += p;
    }
    if (sum <= 0.0) throw ValidationError("DensityMatrix::classical: probabilities sum to zero");
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = std::max(0.0, probabilities[i]) / sum;
    return DensityMatrix(std::move(m));
  }

  static DensityMatrix maximally_mixed(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0 / dim;
    return DensityMatrix(std::move(m));
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  int dim() const { return matrix_.dim(); }

  /// Tr(rho^2); 1 for pure states, 1/dim for the maximally mixed state.
  double purity() const { return trace(matmul(matrix_, matrix_)).real(); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

struct ArtificialParams {
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
};

/// Player count, per-player strategy basis labels, one payoff operator per
/// player, and (for the built-in game family) its two payoff parameters.
class GameDefinition {
 public:
  GameDefinition(std::vector<std::vector<std::string>> basis_labels,
                 std::vector<PayoffOperator> payoffs,
                 std::optional<ArtificialParams> params = std::nullopt)
      : basis_labels_(std::move(basis_labels)), payoffs_(std::move(payoffs)), params_(params) {
    if (basis_labels_.empty()) throw ValidationError("GameDefinition: need at least one player");
    if (payoffs_.size() != basis_labels_.size())
      throw ValidationError("GameDefinition: " + std::to_string(basis_labels_.size()) +
                            " players but " + std::to_string(payoffs_.size()) +
                            " payoff operators");
    int prod = 1;
    for (const auto& labels : basis_labels_) {
      if (labels.empty()) throw ValidationError("GameDefinition: player with empty basis");
      dims_.push_back(static_cast<int>(labels.size()));
      prod *= static_cast<int>(labels.size());
    }
    for (std::size_t i = 0; i < payoffs_.size(); ++i)
      if (payoffs_[i].dim() != prod)
        throw ValidationError("GameDefinition: payoff operator " + std::to_string(i) + " has dim " +
                              std::to_string(payoffs_[i].dim()) + ", joint space has dim " +
                              std::to_string(prod));
    if (params_) {
      if (!(params_->epsilon1 > 0.0) || !(params_->epsilon2 > 0.0))
        throw ValidationError("GameDefinition: epsilon1 and epsilon2 must be positive");
      if (params_->epsilon1 == params_->epsilon2)
        throw ValidationError("GameDefinition: epsilon1 and epsilon2 must differ");
    }
  }

  int n_players() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  int joint_dim() const {
    int p = 1;
    for (int d : dims_) p *= d;
    return p;
  }
  const std::vector<std::vector<std::string>>& basis_labels() const { return basis_labels_; }
  const PayoffOperator& payoff_operator(int player) const { return payoffs_.at(player); }
  const std::vector<PayoffOperator>& payoff_operators() const { return payoffs_; }
  const std::optional<ArtificialParams>& params() const { return params_; }

  /// Label of a joint basis index, e.g. "BS" for player 1 = B, player 2 = S.
  std::string joint_label(int index) const {
    std::vector<int> digits;
    detail::decompose_index(index, dims_, digits);
    std::string s;
    for (std::size_t f = 0; f < digits.size(); ++f) s += basis_labels_[f][digits[f]];
    return s;
  }

 private:
  std::vector<std::vector<std::string>> basis_labels_;
  std::vector<int> dims_;
  std::vector<PayoffOperator> payoffs_;
  std::optional<ArtificialParams> params_;
};

/// The built-in 4x4 payoff pattern on the joint basis |BB>,|BS>,|SB>,|SS>:
/// e1 on the diagonal corners and the (BB,SS) couplings, e2 on the middle
/// block. No parameter constraints; callers that need them use
/// build_artificial_game.
inline ComplexMatrix artificial_payoff_matrix(double e1, double e2) {
  return ComplexMatrix::from_rows({{e1, 0.0, 0.0, e1},
                                   {0.0, e2, e2, 0.0},
                                   {0.0, e2, e2, 0.0},
                                   {e1, 0.0, 0.0, e1}});
}

/// Two players on basis {B, S} with the shared payoff operator
/// artificial_payoff_matrix(e1, e2). Requires e1 > 0, e2 > 0, e1 != e2.
inline GameDefinition build_artificial_game(double e1, double e2) {
  if (!(e1 > 0.0) || !(e2 > 0.0))
    throw ValidationError("build_artificial_game: epsilon1 and epsilon2 must be positive (got " +
                          std::to_string(e1) + ", " + std::to_string(e2) + ")");
  if (e1 == e2)
    throw ValidationError("build_artificial_game: epsilon1 must differ from epsilon2");
  PayoffOperator h(artificial_payoff_matrix(e1, e2));
  return GameDefinition({{"B", "S"}, {"B", "S"}}, {h, h}, ArtificialParams{e1, e2});
}

/// A strategy profile: either a product of per-player density matrices or an
/// arbitrary joint density matrix on the full space (which may be entangled).
class StrategyProfile {
 public:
  static StrategyProfile product(std::vector<DensityMatrix> factors) {
    if (factors.empty()) throw ValidationError("StrategyProfile: need at least one factor");
    StrategyProfile p;
    for (const auto& f : factors) p.dims_.push_back(f.dim());
    p.factors_ = std::move(factors);
    return p;
  }

  static StrategyProfile joint(DensityMatrix system, std::vector<int> dims) {
    int prod = 1;
    for (int d : dims) {
      if (d < 1) throw ValidationError("StrategyProfile: factor dims must be >= 1");
      prod *= d;
    }
    if (prod != system.dim())
      throw ValidationError("StrategyProfile: dims multiply to " + std::to_string(prod) +
                            " but state dim is " + std::to_string(system.dim()));
    StrategyProfile p;
    p.dims_ = std::move(dims);
    p.joint_ = std::move(system);
    return p;
  }

  bool is_product() const { return !factors_.empty(); }
  int n_players() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<DensityMatrix>& factors() const { return factors_; }

  /// The system state as a plain matrix (Kronecker-expanded for products).
  ComplexMatrix system_matrix() const {
    if (!is_product()) return joint_->matrix();
    ComplexMatrix m = factors_[0].matrix();
    for (std::size_t i = 1; i < factors_.size(); ++i) m = kron(m, factors_[i].matrix());
    return m;
  }

 private:
  StrategyProfile() = default;
  std::vector<int> dims_;
  std::vector<DensityMatrix> factors_;
  std::optional<DensityMatrix> joint_;
};

inline void require_profile_matches(const StrategyProfile& profile, const GameDefinition& g) {
  if (profile.dims() != g.dims())
    throw ValidationError("profile dims do not match the game's player dims");
}

inline void require_player_index(const GameDefinition& g, int player) {
  if (player < 0 || player >= g.n_players())
    throw ValidationError("player index " + std::to_string(player) + " out of range (game has " +
                          std::to_string(g.n_players()) + " players)");
}

/// E^i = Tr(rho H^i). The trace of a density against a Hermitian operator is
/// real; any imaginary residue beyond 1e-10 signals corrupted inputs.
inline double payoff(const StrategyProfile& profile, const GameDefinition& g, int player) {
  require_profile_matches(profile, g);
  require_player_index(g, player);
  const cplx e = trace(matmul(profile.system_matrix(), g.payoff_operator(player).matrix()));
  if (std::abs(e.imag()) > 1e-10)
    throw NumericError("payoff: trace has imaginary residue " + std::to_string(e.imag()));
  return e.real();
}

namespace detail {
/// Operator on the full joint space that acts as `opp` on every factor
/// except `player`, and as the identity on `player`'s factor.
inline ComplexMatrix embed_opponents(const ComplexMatrix& opp, const std::vector<int>& dims,
                                     int player) {
  const int n_factors = static_cast<int>(dims.size());
  int full_dim = 1;
  for (int d : dims) full_dim *= d;
  std::vector<int> opp_dims;
  for (int f = 0; f < n_factors; ++f)
    if (f != player) opp_dims.push_back(dims[f]);

  ComplexMatrix out(full_dim);
  std::vector<int> rdig, cdig, ropp(opp_dims.size()), copp(opp_dims.size());
  for (int r = 0; r < full_dim; ++r) {
    decompose_index(r, dims, rdig);
    for (int c = 0; c < full_dim; ++c) {
      decompose_index(c, dims, cdig);
      if (rdig[player] != cdig[player]) continue;
      int k = 0;
      for (int f = 0; f < n_factors; ++f) {
        if (f == player) continue;
        ropp[k] = rdig[f];
        copp[k] = cdig[f];
        ++k;
      }
      out(r, c) = opp(compose_index(ropp, opp_dims), compose_index(copp, opp_dims));
    }
  }
  return out;
}
}  // namespace detail

/// Reduced payoff matrix of `player` given the joint state of all opponents
/// (an operator on the tensor product of the opponents' spaces, in player
/// order). This is the partial trace of (opponents (x) identity) H^i onto
/// the player's own factor, and satisfies Tr(rho^i H_R^i) = E^i for every
/// own state rho^i.
inline ComplexMatrix reduced_payoff_joint(const ComplexMatrix& opponents_state,
                                          const GameDefinition& g, int player) {
  require_player_index(g, player);
  if (g.n_players() == 1) return hermitize(g.payoff_operator(player).matrix());
  int opp_dim = 1;
  for (int f = 0; f < g.n_players(); ++f)
    if (f != player) opp_dim *= g.dims()[f];
  if (opponents_state.dim() != opp_dim)
    throw ValidationError("reduced_payoff: opponents' state has dim " +
                          std::to_string(opponents_state.dim()) + ", expected " +
                          std::to_string(opp_dim));
  const ComplexMatrix embedded = detail::embed_opponents(opponents_state, g.dims(), player);
  const ComplexMatrix product = matmul(embedded, g.payoff_operator(player).matrix());
  return hermitize(partial_trace(product, g.dims(), {player}));
}

/// Reduced payoff matrix from per-opponent states, given in player order
/// with `player` skipped.
inline ComplexMatrix reduced_payoff(const std::vector<DensityMatrix>& opponent_states,
                                    const GameDefinition& g, int player) {
  require_player_index(g, player);
  if (static_cast<int>(opponent_states.size()) != g.n_players() - 1)
    throw ValidationError("reduced_payoff: expected " + std::to_string(g.n_players() - 1) +
                          " opponent states, got " + std::to_string(opponent_states.size()));
  if (g.n_players() == 1) return hermitize(g.payoff_operator(player).matrix());
  ComplexMatrix opp = opponent_states[0].matrix();
  for (std::size_t i = 1; i < opponent_states.size(); ++i)
    opp = kron(opp, opponent_states[i].matrix());
  return reduced_payoff_joint(opp, g, player);
}

/// Player i's reduced density matrix: the profile's own factor for product
/// profiles, otherwise the partial trace onto factor i.
inline DensityMatrix marginal(const StrategyProfile& profile, int player) {
  if (player < 0 || player >= profile.n_players())
    throw ValidationError("marginal: player index out of range");
  if (profile.is_product()) return profile.factors()[player];
  return DensityMatrix::from_matrix(
      hermitize(partial_trace(profile.system_matrix(), profile.dims(), {player})));
}

/// Joint state of everyone except `player` (partial trace off that factor).
/// For a 1-opponent game this is just the opponent's marginal.
inline ComplexMatrix opponents_joint_state(const StrategyProfile& profile, int player) {
  std::vector<int> keep;
  for (int f = 0; f < profile.n_players(); ++f)
    if (f != player) keep.push_back(f);
  if (keep.empty()) throw ValidationError("opponents_joint_state: single-player profile");
  return hermitize(partial_trace(profile.system_matrix(), profile.dims(), keep));
}

struct PlayerEquilibrium {
  double payoff = 0.0;          // E^i at the profile
  double best_deviation = 0.0;  // lambda_max(H_R^i): best unilateral payoff
  double margin = 0.0;          // payoff - best_deviation
};

struct EquilibriumReport {
  std::vector<PlayerEquilibrium> players;
  bool equilibrium = false;  // margin >= -tol for every player
  bool is_global = false;    // payoff >= lambda_max(H^i) - tol for every player
  double tol = 0.0;
};

/// Equilibrium check against every unilateral deviation: each player's
/// opponents are frozen at their joint reduced state, and the player's best
/// reply value is the top eigenvalue of the reduced payoff matrix. On
/// product profiles this coincides with the textbook best-response test.
/// `is_global` reports the stronger property that no system state at all can
/// beat any player's payoff.
inline EquilibriumReport check_equilibrium(const StrategyProfile& profile, const GameDefinition& g,
                                           double tol = 1e-9) {
  require_profile_matches(profile, g);
  EquilibriumReport report;
  report.tol = tol;
  report.equilibrium = true;
  report.is_global = true;
  for (int i = 0; i < g.n_players(); ++i) {
    PlayerEquilibrium pe;
    pe.payoff = payoff(profile, g, i);
    ComplexMatrix h_reduced = g.n_players() == 1
                                  ? hermitize(g.payoff_operator(i).matrix())
                                  : reduced_payoff_joint(opponents_joint_state(profile, i), g, i);
    pe.best_deviation = eig_hermitian(h_reduced).eigenvalues.front();
    pe.margin = pe.payoff - pe.best_deviation;
    if (pe.margin < -tol) report.equilibrium = false;
    const double top = eig_hermitian(g.payoff_operator(i).matrix()).eigenvalues.front();
    if (pe.payoff < top - tol) report.is_global = false;
    report.players.push_back(pe);
  }
  return report;
}

/// Traditional bimatrix view of a 2-player game: the diagonal entries of
/// each player's payoff operator arranged over joint pure strategies.
struct ClassicalBimatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::array<double, 2>> entries;  // row-major over (row, col)

  const std::array<double, 2>& at(int r, int c) const { return entries[r * cols + c]; }
};

inline ClassicalBimatrix classical_restriction(const GameDefinition& g) {
  if (g.n_players() != 2)
    throw ValidationError("classical_restriction: defined for 2-player games");
  ClassicalBimatrix b;
  b.rows = g.dims()[0];
  b.cols = g.dims()[1];
  for (int r = 0; r < b.rows; ++r)
    for (int c = 0; c < b.cols; ++c) {
      const int j = r * b.cols + c;
      b.entries.push_back({g.payoff_operator(0).matrix()(j, j).real(),
                           g.payoff_operator(1).matrix()(j, j).real()});
    }
  return b;
}

}  // namespace qgs
