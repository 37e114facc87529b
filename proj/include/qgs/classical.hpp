// SPDX-License-Identifier: Apache-2.0
//
// Classical correspondence of the built-in game: the smoothed (logit) best
// response p = 1/(1 + exp(beta*delta*(1 - 2*p_opp))), its paired fixed-point
// iteration, fixed-point enumeration with stability, and bifurcation scans
// over beta. beta is the resolution (inverse temperature); delta is the
// payoff gap epsilon1 - epsilon2. The composed self-map g = f(f(p)) has a
// pitchfork at beta*|delta| = 2: below it 0.5 is the unique stable fixed
// point, above it 0.5 turns unstable and a symmetric stable pair appears.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qgs/game.hpp"
#include "qgs/text_io.hpp"

namespace qgs {

struct ClassicalProfile {
  double p1_b = 0.5;  // probability of the first basis strategy, player 1
  double p2_b = 0.5;  // same for player 2
};

/// Logit response to an opponent playing B with probability p_opp_b.
/// Evaluated branch-wise so large |beta*delta| cannot overflow.
inline double logit_response(double p_opp_b, double beta, double delta) {
  if (beta < 0.0) throw ValidationError("logit_response: beta must be >= 0");
  if (p_opp_b < 0.0 || p_opp_b > 1.0)
    throw ValidationError("logit_response: p_opp_b must lie in [0,1]");
  const double x = beta * delta * (1.0 - 2.0 * p_opp_b);
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

/// d/dp of the logit response: 2*beta*delta*f(p)*(1 - f(p)).
inline double logit_response_derivative(double p, double beta, double delta) {
  const double f = logit_response(p, beta, delta);
  return 2.0 * beta * delta * f * (1.0 - f);
}

struct IterationStep {
  int step = 0;
  double p1_b = 0.0;
  double p2_b = 0.0;
  double payoff1 = 0.0;
  double payoff2 = 0.0;
};

struct IterationTrace {
  std::vector<IterationStep> steps;  // step 0 is the initial profile
  bool converged = false;
  ClassicalProfile final_profile;
};

struct IterateOptions {
  double tol = 1e-10;
  int max_steps = 100000;
  bool sequential = false;  // default is the simultaneous (paired) update
};

namespace detail {
/// Payoffs of the diagonal profile, evaluated through the operator payoff
/// Tr(rho H^i) on the game's joint space.
inline std::pair<double, double> classical_payoffs(const GameDefinition& g, double p1, double p2) {
  const DensityMatrix rho1 = DensityMatrix::classical({p1, 1.0 - p1});
  const DensityMatrix rho2 = DensityMatrix::classical({p2, 1.0 - p2});
  const StrategyProfile profile = StrategyProfile::product({rho1, rho2});
  return {payoff(profile, g, 0), payoff(profile, g, 1)};
}

inline double game_delta(const GameDefinition& g) {
  if (!g.params())
    throw ValidationError(
        "classical solver: game carries no (epsilon1, epsilon2) parameters; "
        "pass delta explicitly");
  return g.params()->epsilon1 - g.params()->epsilon2;
}

inline IterationTrace iterate_core(ClassicalProfile init, double beta, double delta,
                                   const GameDefinition& payoff_game, IterateOptions opts) {
  if (init.p1_b < 0.0 || init.p1_b > 1.0 || init.p2_b < 0.0 || init.p2_b > 1.0)
    throw ValidationError("iterate: initial probabilities must lie in [0,1]");
  if (!(opts.tol > 0.0)) throw ValidationError("iterate: tol must be positive");
  if (opts.max_steps < 1) throw ValidationError("iterate: max_steps must be >= 1");

  IterationTrace trace;
  double p1 = init.p1_b, p2 = init.p2_b;
  auto log_step = [&](int k) {
    const auto [e1, e2] = classical_payoffs(payoff_game, p1, p2);
    trace.steps.push_back({k, p1, p2, e1, e2});
  };
  log_step(0);
  for (int k = 1; k <= opts.max_steps; ++k) {
    const double p1_old = p1, p2_old = p2;
    if (opts.sequential) {
      p1 = logit_response(p2, beta, delta);
      p2 = logit_response(p1, beta, delta);
    } else {
      p1 = logit_response(p2_old, beta, delta);
      p2 = logit_response(p1_old, beta, delta);
    }
    log_step(k);
    const double change = std::max(std::abs(p1 - p1_old), std::abs(p2 - p2_old));
    if (change <= opts.tol) {
      trace.converged = true;
      break;
    }
  }
  trace.final_profile = {p1, p2};
  return trace;
}
}  // namespace detail

/// Runs the paired logit iteration on the given game (delta comes from its
/// parameters). Payoffs along the trace are operator payoffs of the diagonal
/// profile. Non-convergence is reported in the trace, not thrown.
inline IterationTrace iterate(ClassicalProfile init, const GameDefinition& g, double beta,
                              IterateOptions opts = {}) {
  return detail::iterate_core(init, beta, detail::game_delta(g), g, opts);
}

/// Same iteration with delta given directly. Payoffs use the gauge
/// (epsilon1, epsilon2) = (delta, 0) for delta >= 0, (0, -delta) otherwise;
/// the dynamics depend only on delta.
inline IterationTrace iterate(ClassicalProfile init, double beta, double delta,
                              IterateOptions opts = {}) {
  PayoffOperator h(artificial_payoff_matrix(std::max(delta, 0.0), std::max(-delta, 0.0)));
  GameDefinition gauge({{"B", "S"}, {"B", "S"}}, {h, h});
  return detail::iterate_core(init, beta, delta, gauge, opts);
}

struct FixedPoint {
  double p = 0.0;
  bool stable = false;
  double derivative_magnitude = 0.0;  // |g'(p*)| of the composed self-map
};

struct FixedPointReport {
  std::vector<FixedPoint> points;  // ascending in p
  double beta = 0.0;
  double delta = 0.0;
};

/// All fixed points of the composed self-map g(p) = f(f(p)) on [0,1], found
/// by a sign-change scan on a 10^4-cell grid refined by bisection to 1e-12.
/// A root is stable iff |g'(p*)| < 1, with g'(p) = f'(f(p)) f'(p).
inline FixedPointReport find_fixed_points(double beta, double delta) {
  if (beta < 0.0) throw ValidationError("find_fixed_points: beta must be >= 0");
  const auto f = [&](double p) { return logit_response(p, beta, delta); };
  const auto g = [&](double p) { return f(f(p)); };
  const auto h = [&](double p) { return g(p) - p; };

  constexpr int kGridCells = 10000;
  constexpr double kRefine = 1e-12;
  std::vector<double> roots;
  auto push_root = [&](double r) {
    for (double existing : roots)
      if (std::abs(existing - r) <= 1e-9) return;
    roots.push_back(r);
  };

  double x_prev = 0.0;
  double h_prev = h(x_prev);
  if (h_prev == 0.0) push_root(x_prev);
  for (int k = 1; k <= kGridCells; ++k) {
    const double x = static_cast<double>(k) / kGridCells;
    const double hx = h(x);
    if (hx == 0.0) {
      push_root(x);
    } else if (h_prev != 0.0 && (h_prev < 0.0) != (hx < 0.0)) {
      double a = x_prev, b = x, ha = h_prev;
      while (b - a > kRefine) {
        const double mid = 0.5 * (a + b);
        const double hm = h(mid);
        if (hm == 0.0) {
          a = b = mid;
          break;
        }
        if ((ha < 0.0) == (hm < 0.0)) {
          a = mid;
          ha = hm;
        } else {
          b = mid;
        }
      }
      push_root(0.5 * (a + b));
    }
    x_prev = x;
    h_prev = hx;
  }
  std::sort(roots.begin(), roots.end());

  FixedPointReport report;
  report.beta = beta;
  report.delta = delta;
  for (double r : roots) {
    const double gp = logit_response_derivative(f(r), beta, delta) *
                      logit_response_derivative(r, beta, delta);
    report.points.push_back({r, std::abs(gp) < 1.0, std::abs(gp)});
  }
  return report;
}

struct BifurcationRow {
  double beta = 0.0;
  std::vector<FixedPoint> points;
};

/// Fixed-point structure over n evenly spaced beta values in
/// [beta_min, beta_max]. The root count changes 1 -> 3 at beta*|delta| = 2.
inline std::vector<BifurcationRow> bifurcation_scan(double delta, double beta_min, double beta_max,
                                                    int n) {
  if (!(beta_min >= 0.0) || !(beta_min < beta_max))
    throw ValidationError("bifurcation_scan: need 0 <= beta_min < beta_max");
  if (n < 2) throw ValidationError("bifurcation_scan: need n >= 2");
  std::vector<BifurcationRow> rows;
  rows.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double beta = beta_min + (beta_max - beta_min) * k / (n - 1);
    rows.push_back({beta, find_fixed_points(beta, delta).points});
  }
  return rows;
}

/// CSV with header step,p1_b,p2_b,payoff1,payoff2; 17-significant-digit
/// reals; written atomically.
inline void write_trace_csv(const IterationTrace& trace, const std::filesystem::path& path) {
  std::string out = "step,p1_b,p2_b,payoff1,payoff2\n";
  for (const IterationStep& s : trace.steps)
    out += std::to_string(s.step) + "," + fmt17(s.p1_b) + "," + fmt17(s.p2_b) + "," +
           fmt17(s.payoff1) + "," + fmt17(s.payoff2) + "\n";
  write_text_atomic(path, out);
}

/// CSV with header beta,root,stable; roots ascending within each beta.
inline void write_bifurcation_csv(const std::vector<BifurcationRow>& rows,
                                  const std::filesystem::path& path) {
  std::string out = "beta,root,stable\n";
  for (const BifurcationRow& row : rows)
    for (const FixedPoint& p : row.points)
      out += fmt17(row.beta) + "," + fmt17(p.p) + "," + (p.stable ? "1" : "0") + "\n";
  write_text_atomic(path, out);
}

}  // namespace qgs
