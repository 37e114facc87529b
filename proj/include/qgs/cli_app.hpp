// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface. Kept in a header so the test suite can drive the
// exact command implementations in-process. Exit codes: 0 success,
// 1 validation error (bad files, bad flags, degenerate requests),
// 2 numeric non-convergence.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgs/qgs.hpp"

namespace qgs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumeric = 2;

namespace detail {

inline std::string fmt(double v) {
  if (std::abs(v) < 1e-9) v = 0.0;  // display snap for numeric dust
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/// "0.7071|BB> + 0.7071|SS>"; drops components below 1e-4 in magnitude.
inline std::string ket_string(const std::vector<cplx>& v, const GameDefinition& g) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) <= 1e-4) continue;
    std::string coef;
    if (std::abs(v[i].imag()) <= 1e-9) {
      coef = fmt(v[i].real());
    } else if (std::abs(v[i].real()) <= 1e-9) {
      coef = fmt(v[i].imag()) + "i";
    } else {
      coef = "(" + fmt(v[i].real()) + (v[i].imag() < 0 ? "" : "+") + fmt(v[i].imag()) + "i)";
    }
    if (!out.empty()) out += " + ";
    out += coef + "|" + g.joint_label(static_cast<int>(i)) + ">";
  }
  return out.empty() ? "0" : out;
}

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("QGS_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw ValidationError(std::string("QGS_SEED is not a valid integer: ") + env);
    }
  }
  return 42;
}

inline std::pair<double, double> parse_init(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw ValidationError("--init expects two comma-separated probabilities, e.g. 0.9,0.9");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (...) {
    throw ValidationError("--init: cannot parse \"" + s + "\"");
  }
}

}  // namespace detail

/// Parses and runs one command. `args` are the arguments after the program
/// name, in natural order.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"density-matrix game solver: operator payoffs, logit dynamics, "
               "quantum best responses, and global equilibrium states"};
  app.name("qgs");
  app.require_subcommand(1);

  std::function<int()> action;

  // --- make-game -----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("make-game", "write the built-in game as a JSON file");
    auto e1 = std::make_shared<double>(2.0);
    auto e2 = std::make_shared<double>(1.0);
    auto path = std::make_shared<std::string>();
    cmd->add_option("--epsilon1", *e1, "diagonal payoff")->required();
    cmd->add_option("--epsilon2", *e2, "anti-diagonal payoff")->required();
    cmd->add_option("--out", *path, "output file")->required();
    cmd->callback([&action, e1, e2, path] {
      action = [=] {
        save_game(build_artificial_game(*e1, *e2), *path);
        return kExitOk;
      };
    });
  }

  // --- eigen ---------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("eigen", "per-player payoff spectra and top eigenvectors");
    auto game_path = std::make_shared<std::string>();
    cmd->add_option("game", *game_path, "game JSON file")->required();
    cmd->callback([&action, game_path, &out] {
      action = [=, &out] {
        const GameDefinition g = load_game(*game_path);
        for (int i = 0; i < g.n_players(); ++i) {
          const EigenDecomposition d = eig_hermitian(g.payoff_operator(i).matrix());
          out << "player " << (i + 1) << ": ";
          for (int k = 0; k < d.dim(); ++k)
            out << (k ? ", " : "") << detail::fmt(d.eigenvalues[k]);
          out << "; top: " << detail::ket_string(d.eigenvectors.front(), g) << "\n";
        }
        return kExitOk;
      };
    });
  }

  // --- solve-classical -----------------------------------------------------
  {
    auto* cmd = app.add_subcommand("solve-classical", "run the logit fixed-point iteration");
    auto game_path = std::make_shared<std::string>();
    auto beta = std::make_shared<double>(1.0);
    auto init = std::make_shared<std::string>("0.5,0.5");
    auto tol = std::make_shared<double>(1e-10);
    auto max_steps = std::make_shared<int>(100000);
    auto trace_path = std::make_shared<std::string>();
    auto sequential = std::make_shared<bool>(false);
    cmd->add_option("game", *game_path, "game JSON file")->required();
    cmd->add_option("--beta", *beta, "resolution level")->required();
    cmd->add_option("--init", *init, "initial profile p1,p2 (default 0.5,0.5)");
    cmd->add_option("--tol", *tol, "convergence tolerance (default 1e-10)");
    cmd->add_option("--max-steps", *max_steps, "iteration cap (default 100000)");
    cmd->add_option("--trace", *trace_path, "write the per-step CSV here");
    cmd->add_flag("--sequential", *sequential, "update players one after the other");
    cmd->callback([&action, game_path, beta, init, tol, max_steps, trace_path, sequential, &out] {
      action = [=, &out] {
        const GameDefinition g = load_game(*game_path);
        const auto [p1, p2] = detail::parse_init(*init);
        IterateOptions opts;
        opts.tol = *tol;
        opts.max_steps = *max_steps;
        opts.sequential = *sequential;
        const IterationTrace trace = iterate({p1, p2}, g, *beta, opts);
        const IterationStep& last = trace.steps.back();
        out << "steps: " << last.step << "\n";
        out << "final: p1_b = " << detail::fmt(trace.final_profile.p1_b)
            << ", p2_b = " << detail::fmt(trace.final_profile.p2_b) << "\n";
        out << "payoffs: E1 = " << detail::fmt(last.payoff1)
            << ", E2 = " << detail::fmt(last.payoff2) << "\n";
        out << "converged: " << (trace.converged ? "yes" : "no") << "\n";
        if (!trace_path->empty()) {
          write_trace_csv(trace, *trace_path);
          out << "trace: " << *trace_path << "\n";
        }
        return trace.converged ? kExitOk : kExitNumeric;
      };
    });
  }

  // --- fixed-points --------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("fixed-points", "fixed points of the composed logit self-map");
    auto game_path = std::make_shared<std::string>();
    auto beta = std::make_shared<double>(1.0);
    cmd->add_option("game", *game_path, "game JSON file")->required();
    cmd->add_option("--beta", *beta, "resolution level")->required();
    cmd->callback([&action, game_path, beta, &out] {
      action = [=, &out] {
        const GameDefinition g = load_game(*game_path);
        if (!g.params())
          throw ValidationError("fixed-points: game carries no (epsilon1, epsilon2) parameters");
        const double delta = g.params()->epsilon1 - g.params()->epsilon2;
        const FixedPointReport report = find_fixed_points(*beta, delta);
        out << "beta = " << detail::fmt(*beta) << ", delta = " << detail::fmt(delta) << "\n";
        for (const FixedPoint& p : report.points)
          out << "p* = " << detail::fmt(p.p) << "  " << (p.stable ? "stable  " : "unstable")
              << "  |g'| = " << detail::fmt(p.derivative_magnitude) << "\n";
        return kExitOk;
      };
    });
  }

  // --- bifurcation ---------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("bifurcation", "fixed points swept over a beta range");
    auto game_path = std::make_shared<std::string>();
    auto beta_min = std::make_shared<double>(0.0);
    auto beta_max = std::make_shared<double>(5.0);
    auto steps = std::make_shared<int>(51);
    auto out_path = std::make_shared<std::string>();
    cmd->add_option("game", *game_path, "game JSON file")->required();
    cmd->add_option("--beta-min", *beta_min, "range start (default 0)");
    cmd->add_option("--beta-max", *beta_max, "range end (default 5)");
    cmd->add_option("--steps", *steps, "number of beta values (default 51)");
    cmd->add_option("--out", *out_path, "write beta,root,stable CSV here");
    cmd->callback([&action, game_path, beta_min, beta_max, steps, out_path, &out] {
      action = [=, &out] {
        const GameDefinition g = load_game(*game_path);
        if (!g.params())
          throw ValidationError("bifurcation: game carries no (epsilon1, epsilon2) parameters");
        const double delta = g.params()->epsilon1 - g.params()->epsilon2;
        const auto rows = bifurcation_scan(delta, *beta_min, *beta_max, *steps);
        for (const BifurcationRow& row : rows) {
          out << "beta = " << detail::fmt(row.beta) << ":";
          for (const FixedPoint& p : row.points)
            out << "  " << detail::fmt(p.p) << (p.stable ? " (s)" : " (u)");
          out << "\n";
        }
        if (!out_path->empty()) {
          write_bifurcation_csv(rows, *out_path);
          out << "csv: " << *out_path << "\n";
        }
        return kExitOk;
      };
    });
  }

  // --- solve-quantum -------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("solve-quantum",
                                   "verify the mutual best-response family (theta, -theta)");
    auto game_path = std::make_shared<std::string>();
    auto samples = std::make_shared<int>(32);
    cmd->add_option("game", *game_path, "game JSON file")->required();
    cmd->add_option("--samples", *samples, "theta samples (default 32)");
    cmd->callback([&action, game_path, samples, &out] {
      action = [=, &out] {
        const GameDefinition g = load_game(*game_path);
        const QuantumNEFamilyReport report = verify_ne_family(g, *samples);
        out << "samples: " << report.samples.size() << "\n";
        out << "expected payoff: " << detail::fmt(report.expected_payoff) << "\n";
        out << "max angle deviation of best response from -theta: "
            << detail::fmt(report.max_angle_deviation) << "\n";
        out << "max payoff deviation: " << detail::fmt(report.max_payoff_deviation) << "\n";
        return kExitOk;
      };
    });
  }

  // --- best-response -------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("best-response", "best reply to an opponent playing U(theta)");
    auto game_path = std::make_shared<std::string>();
    auto theta = std::make_shared<double>(0.0);
    cmd->add_option("game", *game_path, "game JSON file")->required();
    cmd->add_option("--theta", *theta, "opponent angle in radians")->required();
    cmd->callback([&action, game_path, theta, &out] {
      action = [=, &out] {
        const GameDefinition g = load_game(*game_path);
        const BestResponse br = best_response_theta(*theta, g);
        out << "theta* = " << detail::fmt(br.theta) << ", payoff = " << detail::fmt(br.payoff)
            << "\n";
        return kExitOk;
      };
    });
  }

  // --- solve-ges -----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("solve-ges", "global equilibrium state and diagnostics");
    auto game_path = std::make_shared<std::string>();
    auto samples = std::make_shared<int>(200);
    auto seed = std::make_shared<std::uint64_t>(42);
    cmd->add_option("game", *game_path, "game JSON file")->required();
    cmd->add_option("--samples", *samples, "random densities for the sampling bound (default 200)");
    auto* seed_opt = cmd->add_option("--seed", *seed, "sampling seed (default 42, or QGS_SEED)");
    cmd->callback([&action, game_path, samples, seed, seed_opt, &out] {
      action = [=, &out] {
        if (seed_opt->count() == 0) *seed = detail::default_seed();
        const GameDefinition g = load_game(*game_path);
        const GESReport report = ges_solve(g);
        const EigenDecomposition d = eig_hermitian(g.payoff_operator(0).matrix());
        out << "state: " << detail::ket_string(d.eigenvectors.front(), g) << "\n";
        out << "payoffs:";
        for (double e : report.payoffs) out << " " << detail::fmt(e);
        out << "\n";
        out << "top eigenvalue: " << detail::fmt(report.top_eigenvalue) << "\n";
        out << "degenerate top eigenvalue: " << (report.degenerate ? "yes" : "no") << "\n";
        out << "common maximizer for all players: " << (report.common ? "yes" : "no") << "\n";
        const EntanglementReport ent = entanglement_report(report.state, g.dims());
        out << "marginal purities:";
        for (double p : ent.marginal_purities) out << " " << detail::fmt(p);
        out << "\n";
        out << "distance to marginal product: " << detail::fmt(ent.product_distance) << "\n";
        out << "entangled or correlated: " << (ent.is_product ? "no" : "yes") << "\n";
        const IsGesReport check = is_ges(report.state, g, 1e-9, *samples, *seed);
        out << "global equilibrium: " << (check.is_ges ? "yes" : "no")
            << " (sampling consistent: " << (check.sampling_consistent ? "yes" : "no") << ", "
            << check.n_samples << " samples, seed " << check.seed << ")\n";
        return kExitOk;
      };
    });
  }

  // --- check ---------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("check", "equilibrium check of a state file against a game");
    auto game_path = std::make_shared<std::string>();
    auto state_path = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(1e-9);
    cmd->add_option("game", *game_path, "game JSON file")->required();
    cmd->add_option("state", *state_path, "state JSON file")->required();
    cmd->add_option("--tol", *tol, "margin tolerance (default 1e-9)");
    cmd->callback([&action, game_path, state_path, tol, &out] {
      action = [=, &out] {
        const GameDefinition g = load_game(*game_path);
        const StateFile state = load_state(*state_path);
        if (state.dims != g.dims())
          throw ValidationError("check: state dims do not match the game's player dims");
        const StrategyProfile profile = StrategyProfile::joint(state.state, g.dims());
        const EquilibriumReport report = check_equilibrium(profile, g, *tol);
        for (std::size_t i = 0; i < report.players.size(); ++i) {
          const PlayerEquilibrium& pe = report.players[i];
          out << "player " << (i + 1) << ": payoff = " << detail::fmt(pe.payoff)
              << ", best deviation = " << detail::fmt(pe.best_deviation)
              << ", margin = " << detail::fmt(pe.margin) << "\n";
        }
        out << (report.equilibrium ? "equilibrium" : "not equilibrium") << " (tol "
            << detail::fmt(report.tol) << ")\n";
        out << "global equilibrium state: " << (report.is_global ? "yes" : "no") << "\n";
        return kExitOk;
      };
    });
  }

  // --- decoherence-gap -----------------------------------------------------
  {
    auto* cmd = app.add_subcommand("decoherence-gap",
                                   "payoff lost when a state is replaced by its marginal product");
    auto game_path = std::make_shared<std::string>();
    auto state_path = std::make_shared<std::string>();
    cmd->add_option("game", *game_path, "game JSON file")->required();
    cmd->add_option("state", *state_path, "state JSON file")->required();
    cmd->callback([&action, game_path, state_path, &out] {
      action = [=, &out] {
        const GameDefinition g = load_game(*game_path);
        const StateFile state = load_state(*state_path);
        if (state.dims != g.dims())
          throw ValidationError("decoherence-gap: state dims do not match the game");
        const std::vector<double> gaps = decoherence_gap(state.state, g);
        for (std::size_t i = 0; i < gaps.size(); ++i)
          out << "player " << (i + 1) << ": gap = " << detail::fmt(gaps[i]) << "\n";
        return kExitOk;
      };
    });
  }

  // --- cross-validate ------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("cross-validate",
                                   "compare the direct protocol payoff with the operator payoff");
    auto e1 = std::make_shared<double>(2.0);
    auto e2 = std::make_shared<double>(1.0);
    auto grid = std::make_shared<int>(100);
    cmd->add_option("--epsilon1", *e1, "diagonal payoff")->required();
    cmd->add_option("--epsilon2", *e2, "anti-diagonal payoff")->required();
    cmd->add_option("--grid", *grid, "grid points per angle (default 100)");
    cmd->callback([&action, e1, e2, grid, &out] {
      action = [=, &out] {
        const CrossValidationReport report = cross_validate(*e1, *e2, *grid);
        out << "grid: " << report.grid << "x" << report.grid << "\n";
        out << "max error (direct vs operator): " << detail::fmt(report.max_cross_error) << "\n";
        out << "max error (direct vs closed form): " << detail::fmt(report.max_direct_vs_closed)
            << "\n";
        out << "max error (operator vs closed form): "
            << detail::fmt(report.max_operator_vs_closed) << "\n";
        return kExitOk;
      };
    });
  }

  std::reverse(args.begin(), args.end());  // CLI11 consumes args back to front
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    return action();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace qgs::cli
