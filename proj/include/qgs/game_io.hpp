// SPDX-License-Identifier: Apache-2.0
//
// Game and state files. Games are UTF-8 JSON:
//
//   {"players": 2,
//    "basis": [["B","S"],["B","S"]],
//    "payoff": {"kind": "artificial", "epsilon1": 2.0, "epsilon2": 1.0}}
//
// or with "kind": "explicit" and "matrices": one flat row-major list of
// [re, im] pairs per player. States are {"dims": [...], "matrix": [...]}
// with the same flat pair encoding. Serialized doubles survive a load/save
// round trip exactly.

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgs/game.hpp"
#include "qgs/text_io.hpp"

namespace qgs {

namespace detail {

inline nlohmann::json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("parse error in " + path.string() + ": " + e.what());
  }
}

inline const nlohmann::json& field(const nlohmann::json& j, const char* key,
                                   const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError("missing field " + path + "/" + key);
  return *it;
}

/// Flat list of [re, im] pairs -> square matrix; `where` names the JSON
/// location for error messages.
inline ComplexMatrix matrix_from_pairs(const nlohmann::json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim * dim)
    throw ValidationError(where + ": expected a flat list of " + std::to_string(dim * dim) +
                          " [re, im] pairs");
  std::vector<cplx> entries;
  entries.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& pair = j[k];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw ValidationError(where + "[" + std::to_string(k) + "]: expected [re, im]");
    entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  try {
    return ComplexMatrix::from_flat(dim, std::move(entries));
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

inline nlohmann::json matrix_to_pairs(const ComplexMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const cplx& z : m.data()) out.push_back({z.real(), z.imag()});
  return out;
}

/// Hermiticity check that names the offending entry pair.
inline void require_hermitian_named(const ComplexMatrix& m, double tol, const std::string& where) {
  for (int r = 0; r < m.dim(); ++r)
    for (int c = r; c < m.dim(); ++c)
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tol)
        throw ValidationError(where + ": not Hermitian, entry (" + std::to_string(r) + "," +
                              std::to_string(c) + ") vs conj of (" + std::to_string(c) + "," +
                              std::to_string(r) + ") differ by " +
                              std::to_string(std::abs(m(r, c) - std::conj(m(c, r)))));
}

}  // namespace detail

inline GameDefinition load_game(const std::filesystem::path& path) {
  const nlohmann::json j = detail::parse_json_file(path);
  if (!j.is_object()) throw ValidationError(path.string() + ": top level must be an object");

  const auto& players_j = detail::field(j, "players", "");
  if (!players_j.is_number_integer() || players_j.get<int>() < 1)
    throw ValidationError("/players: must be a positive integer");
  const int players = players_j.get<int>();

  const auto& basis_j = detail::field(j, "basis", "");
  if (!basis_j.is_array() || static_cast<int>(basis_j.size()) != players)
    throw ValidationError("/basis: expected " + std::to_string(players) + " label lists");
  std::vector<std::vector<std::string>> basis;
  std::vector<int> dims;
  int joint_dim = 1;
  for (std::size_t p = 0; p < basis_j.size(); ++p) {
    const auto& labels_j = basis_j[p];
    if (!labels_j.is_array() || labels_j.empty())
      throw ValidationError("/basis[" + std::to_string(p) + "]: expected a nonempty label list");
    std::vector<std::string> labels;
    for (const auto& l : labels_j) {
      if (!l.is_string())
        throw ValidationError("/basis[" + std::to_string(p) + "]: labels must be strings");
      labels.push_back(l.get<std::string>());
    }
    dims.push_back(static_cast<int>(labels.size()));
    joint_dim *= static_cast<int>(labels.size());
    basis.push_back(std::move(labels));
  }

  const auto& payoff_j = detail::field(j, "payoff", "");
  const auto& kind_j = detail::field(payoff_j, "kind", "/payoff");
  if (!kind_j.is_string()) throw ValidationError("/payoff/kind: must be a string");
  const std::string kind = kind_j.get<std::string>();

  if (kind == "artificial") {
    const auto& e1_j = detail::field(payoff_j, "epsilon1", "/payoff");
    const auto& e2_j = detail::field(payoff_j, "epsilon2", "/payoff");
    if (!e1_j.is_number() || !e2_j.is_number())
      throw ValidationError("/payoff/epsilon1, /payoff/epsilon2: must be numbers");
    if (players != 2 || dims != std::vector<int>{2, 2})
      throw ValidationError("/payoff: kind \"artificial\" needs 2 players with 2 basis labels each");
    const double e1 = e1_j.get<double>();
    const double e2 = e2_j.get<double>();
    try {
      PayoffOperator h(artificial_payoff_matrix(e1, e2));
      return GameDefinition(std::move(basis), {h, h}, ArtificialParams{e1, e2});
    } catch (const ValidationError& e) {
      throw ValidationError("/payoff: " + std::string(e.what()));
    }
  }
  if (kind == "explicit") {
    const auto& matrices_j = detail::field(payoff_j, "matrices", "/payoff");
    if (!matrices_j.is_array() || static_cast<int>(matrices_j.size()) != players)
      throw ValidationError("/payoff/matrices: expected one matrix per player");
    std::vector<PayoffOperator> payoffs;
    for (std::size_t p = 0; p < matrices_j.size(); ++p) {
      const std::string where = "/payoff/matrices[" + std::to_string(p) + "]";
      ComplexMatrix m = detail::matrix_from_pairs(matrices_j[p], joint_dim, where);
      detail::require_hermitian_named(m, 1e-10, where);
      payoffs.emplace_back(std::move(m));
    }
    return GameDefinition(std::move(basis), std::move(payoffs));
  }
  throw ValidationError("/payoff/kind: unknown kind \"" + kind +
                        "\" (expected \"artificial\" or \"explicit\")");
}

inline void save_game(const GameDefinition& g, const std::filesystem::path& path) {
  nlohmann::json j;
  j["players"] = g.n_players();
  j["basis"] = g.basis_labels();
  if (g.params()) {
    j["payoff"] = {{"kind", "artificial"},
                   {"epsilon1", g.params()->epsilon1},
                   {"epsilon2", g.params()->epsilon2}};
  } else {
    nlohmann::json matrices = nlohmann::json::array();
    for (const PayoffOperator& h : g.payoff_operators())
      matrices.push_back(detail::matrix_to_pairs(h.matrix()));
    j["payoff"] = {{"kind", "explicit"}, {"matrices", std::move(matrices)}};
  }
  write_text_atomic(path, j.dump(2) + "\n");
}

struct StateFile {
  std::vector<int> dims;
  DensityMatrix state;
};

inline StateFile load_state(const std::filesystem::path& path) {
  const nlohmann::json j = detail::parse_json_file(path);
  if (!j.is_object()) throw ValidationError(path.string() + ": top level must be an object");

  const auto& dims_j = detail::field(j, "dims", "");
  if (!dims_j.is_array() || dims_j.empty())
    throw ValidationError("/dims: expected a nonempty list of factor dims");
  std::vector<int> dims;
  int prod = 1;
  for (const auto& d : dims_j) {
    if (!d.is_number_integer() || d.get<int>() < 1)
      throw ValidationError("/dims: entries must be positive integers");
    dims.push_back(d.get<int>());
    prod *= d.get<int>();
  }

  const auto& matrix_j = detail::field(j, "matrix", "");
  ComplexMatrix m = detail::matrix_from_pairs(matrix_j, prod, "/matrix");
  detail::require_hermitian_named(m, 1e-10, "/matrix");
  try {
    return StateFile{std::move(dims), DensityMatrix::from_matrix(std::move(m))};
  } catch (const ValidationError& e) {
    throw ValidationError("/matrix: " + std::string(e.what()));
  }
}

inline void save_state(const std::vector<int>& dims, const DensityMatrix& state,
                       const std::filesystem::path& path) {
  int prod = 1;
  for (int d : dims) prod *= d;
  if (prod != state.dim())
    throw ValidationError("save_state: dims multiply to " + std::to_string(prod) +
                          " but state dim is " + std::to_string(state.dim()));
  nlohmann::json j;
  j["dims"] = dims;
  j["matrix"] = detail::matrix_to_pairs(state.matrix());
  write_text_atomic(path, j.dump(2) + "\n");
}

}  // namespace qgs
