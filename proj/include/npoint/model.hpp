// Copyright 2026 The npoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Finite toy models: a label registry, propagators and named vertex or
// n-point functionals, loaded from JSON, plus the end-to-end pipelines
// between complete, connected and 1PI functions.
//
// File layout:
//
//   {
//     "labels": [{"name": "x1", "parity": "even"}, ...],
//     "feynman_propagator": [["1/2", "0"], ["0", "3"]],
//     "connected_propagator": [...],            (optional)
//     "tree_level_propagator": "feynman",       (optional: feynman|connected)
//     "functionals": [{"name": "tau", "role": "tau", "unit_value": "0",
//                      "kernels": [{"monomial": ["x1", "x1", "x2"], "value": "5"}]}],
//     "metadata": {"name": "...", "description": "..."}
//   }
//
// Rationals are strings "p/q" so nothing is rounded.

#ifndef NPOINT_MODEL_HPP_
#define NPOINT_MODEL_HPP_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "npoint/errors.hpp"
#include "npoint/field_algebra.hpp"
#include "npoint/functional.hpp"
#include "npoint/propagator.hpp"
#include "npoint/rational.hpp"
#include "npoint/tree_engine.hpp"

namespace npoint {

enum class Role { tau, tau_hat, tau_tree, sigma, rho };

inline const char* to_string(Role role) {
  switch (role) {
    case Role::tau:
      return "tau";
    case Role::tau_hat:
      return "tau_hat";
    case Role::tau_tree:
      return "tau_tree";
    case Role::sigma:
      return "sigma";
    case Role::rho:
      return "rho";
  }
  return "?";
}

inline std::optional<Role> parse_role(std::string_view s) {
  for (Role r : {Role::tau, Role::tau_hat, Role::tau_tree, Role::sigma, Role::rho}) {
    if (s == to_string(r)) return r;
  }
  return std::nullopt;
}

struct NamedFunctional {
  std::string name;
  Role role = Role::sigma;
  Functional<Rational> functional;
  bool vanishing_one_point = false;
};

struct FiniteModel {
  RegistryPtr registry;
  PropagatorMatrix<Rational> feynman_propagator;
  std::optional<PropagatorMatrix<Rational>> connected_propagator;
  PropagatorRole tree_level_propagator = PropagatorRole::feynman;
  std::vector<NamedFunctional> functionals;
  std::string name;
  std::string description;

  // The functional with the given role; `name` disambiguates when several exist.
  const NamedFunctional& find(Role role, const std::optional<std::string>& name = std::nullopt) const {
    const NamedFunctional* hit = nullptr;
    for (const auto& f : functionals) {
      if (f.role != role || (name && f.name != *name)) continue;
      if (hit) throw ModelError(ModelError::Kind::missing_role,
                                std::string("several functionals with role ") + to_string(role) + "; pick one by name");
      hit = &f;
    }
    if (!hit) {
      throw ModelError(ModelError::Kind::missing_role, std::string("model has no functional with role ") +
                                                            to_string(role) + (name ? " named '" + *name + "'" : ""));
    }
    return *hit;
  }

  // Propagator dressing internal edges in the given mode.
  const PropagatorMatrix<Rational>& propagator_for(Mode mode) const {
    const bool connected = mode == Mode::modified ||
                           (mode == Mode::tree_level && tree_level_propagator == PropagatorRole::connected2);
    if (!connected) return feynman_propagator;
    if (!connected_propagator) {
      throw ModelError(ModelError::Kind::missing_role, "mode needs a connected_propagator in the model");
    }
    return *connected_propagator;
  }
};

namespace detail {

[[noreturn]] inline void model_fail(ModelError::Kind kind, const std::string& what) { throw ModelError(kind, what); }

inline Rational json_rational(const nlohmann::json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const Error& e) {
    model_fail(ModelError::Kind::parse, where + ": " + e.what());
  }
  model_fail(ModelError::Kind::parse, where + ": expected a rational string \"p/q\"");
}

inline PropagatorMatrix<Rational> json_propagator(const nlohmann::json& j, const RegistryPtr& reg,
                                                  PropagatorRole role, const std::string& field) {
  if (!j.is_array()) model_fail(ModelError::Kind::parse, field + " must be an array of rows");
  std::vector<std::vector<Rational>> m;
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array()) model_fail(ModelError::Kind::parse, field + " row " + std::to_string(r) + " is not an array");
    std::vector<Rational> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      row.push_back(json_rational(j[r][c], field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
    }
    m.push_back(std::move(row));
  }
  try {
    return PropagatorMatrix<Rational>(reg, std::move(m), role);
  } catch (const AsymmetricPropagator& e) {
    model_fail(ModelError::Kind::asymmetric, field + ": " + e.what());
  } catch (const SingularPropagator& e) {
    model_fail(ModelError::Kind::singular, field + ": " + e.what());
  } catch (const Error& e) {
    model_fail(ModelError::Kind::invalid, field + ": " + e.what());
  }
}

inline void check_role_flags(const NamedFunctional& nf) {
  const auto& f = nf.functional;
  auto fail = [&](const std::string& why) {
    model_fail(ModelError::Kind::role_mismatch,
               "functional '" + nf.name + "' (role " + to_string(nf.role) + ") " + why);
  };
  switch (nf.role) {
    case Role::rho:
      if (f.unit_value() != Rational(1)) fail("must have unit_value 1");
      break;
    case Role::sigma:
      if (f.unit_value() != Rational(0)) fail("must have unit_value 0");
      break;
    case Role::tau:
    case Role::tau_hat:
    case Role::tau_tree:
      if (f.unit_value() != Rational(0)) fail("must have unit_value 0");
      if (!f.vanishes_at_degree(1)) fail("must have vanishing 1-point values");
      if (nf.role != Role::tau && !f.vanishes_at_degree(2)) fail("must have vanishing 2-point values");
      break;
  }
  if (nf.vanishing_one_point && !f.vanishes_at_degree(1)) fail("is flagged vanishing_one_point but has 1-point values");
}

}  // namespace detail

inline Functional<Rational> parse_functional(const nlohmann::json& j, const RegistryPtr& reg,
                                             const std::string& where) {
  using detail::model_fail;
  Rational unit(0);
  if (j.contains("unit_value")) unit = detail::json_rational(j["unit_value"], where + ".unit_value");
  std::optional<std::size_t> cap;
  if (j.contains("max_degree")) {
    if (!j["max_degree"].is_number_unsigned()) model_fail(ModelError::Kind::parse, where + ".max_degree must be >= 0");
    cap = j["max_degree"].get<std::size_t>();
  }
  Functional<Rational> f(reg, unit, cap);
  if (!j.contains("kernels")) return f;
  if (!j["kernels"].is_array()) model_fail(ModelError::Kind::parse, where + ".kernels must be an array");
  std::set<Monomial> assigned;
  for (std::size_t i = 0; i < j["kernels"].size(); ++i) {
    const auto& entry = j["kernels"][i];
    const std::string at = where + ".kernels[" + std::to_string(i) + "]";
    if (!entry.is_object() || !entry.contains("monomial") || !entry["monomial"].is_array() ||
        !entry.contains("value")) {
      model_fail(ModelError::Kind::parse, at + " needs \"monomial\" (array of names) and \"value\"");
    }
    std::vector<LabelId> word;
    for (const auto& name : entry["monomial"]) {
      if (!name.is_string()) model_fail(ModelError::Kind::parse, at + ": label names must be strings");
      auto id = reg->find(name.get<std::string>());
      if (!id) model_fail(ModelError::Kind::invalid, at + ": unknown label '" + name.get<std::string>() + "'");
      word.push_back(*id);
    }
    if (word.empty()) model_fail(ModelError::Kind::invalid, at + ": use unit_value for the empty monomial");
    const Rational value = detail::json_rational(entry["value"], at + ".value");
    const auto sm = make_monomial(*reg, word);
    if (sm.is_zero()) model_fail(ModelError::Kind::invalid, at + ": repeated fermion makes the monomial vanish");
    if (!assigned.insert(sm.monomial).second) {
      model_fail(ModelError::Kind::invalid, at + ": duplicate entry for " + format_monomial(*reg, sm.monomial));
    }
    if (cap && sm.monomial.degree() > *cap) {
      model_fail(ModelError::Kind::invalid, at + ": degree exceeds max_degree");
    }
    try {
      f.set(sm.monomial, Rational(value * sm.sign));
    } catch (const Error& e) {
      model_fail(ModelError::Kind::invalid, at + ": " + e.what());
    }
  }
  return f;
}

inline FiniteModel parse_model(const nlohmann::json& j) {
  using detail::model_fail;
  if (!j.is_object()) model_fail(ModelError::Kind::parse, "model must be a JSON object");
  if (!j.contains("labels") || !j["labels"].is_array()) model_fail(ModelError::Kind::parse, "missing \"labels\" array");

  auto reg = std::make_shared<LabelRegistry>();
  for (std::size_t i = 0; i < j["labels"].size(); ++i) {
    const auto& l = j["labels"][i];
    if (!l.is_object() || !l.contains("name") || !l["name"].is_string()) {
      model_fail(ModelError::Kind::parse, "labels[" + std::to_string(i) + "] needs a string \"name\"");
    }
    Parity parity = Parity::even;
    if (l.contains("parity")) {
      const std::string p = l["parity"].is_string() ? l["parity"].get<std::string>() : "";
      if (p == "even" || p == "boson") {
        parity = Parity::even;
      } else if (p == "odd" || p == "fermion") {
        parity = Parity::odd;
      } else {
        model_fail(ModelError::Kind::parse, "labels[" + std::to_string(i) + "].parity must be even or odd");
      }
    }
    try {
      reg->add(l["name"].get<std::string>(), parity);
    } catch (const Error& e) {
      model_fail(ModelError::Kind::invalid, e.what());
    }
  }
  RegistryPtr registry = reg;

  if (!j.contains("feynman_propagator")) model_fail(ModelError::Kind::parse, "missing \"feynman_propagator\"");
  FiniteModel model{registry,
                    detail::json_propagator(j["feynman_propagator"], registry, PropagatorRole::feynman,
                                            "feynman_propagator"),
                    std::nullopt,
                    PropagatorRole::feynman,
                    {},
                    {},
                    {}};
  if (j.contains("connected_propagator") && !j["connected_propagator"].is_null()) {
    model.connected_propagator = detail::json_propagator(j["connected_propagator"], registry,
                                                         PropagatorRole::connected2, "connected_propagator");
  }
  if (j.contains("tree_level_propagator")) {
    const auto& t = j["tree_level_propagator"];
    if (t == "feynman") {
      model.tree_level_propagator = PropagatorRole::feynman;
    } else if (t == "connected") {
      model.tree_level_propagator = PropagatorRole::connected2;
    } else {
      model_fail(ModelError::Kind::parse, "tree_level_propagator must be \"feynman\" or \"connected\"");
    }
  }

  if (j.contains("functionals")) {
    if (!j["functionals"].is_array()) model_fail(ModelError::Kind::parse, "\"functionals\" must be an array");
    for (std::size_t i = 0; i < j["functionals"].size(); ++i) {
      const auto& fj = j["functionals"][i];
      const std::string where = "functionals[" + std::to_string(i) + "]";
      if (!fj.is_object() || !fj.contains("name") || !fj["name"].is_string() || !fj.contains("role") ||
          !fj["role"].is_string()) {
        model_fail(ModelError::Kind::parse, where + " needs string \"name\" and \"role\"");
      }
      auto role = parse_role(fj["role"].get<std::string>());
      if (!role) model_fail(ModelError::Kind::parse, where + ": unknown role '" + fj["role"].get<std::string>() + "'");
      NamedFunctional nf{fj["name"].get<std::string>(), *role, parse_functional(fj, registry, where),
                         fj.value("vanishing_one_point", false)};
      for (const auto& other : model.functionals) {
        if (other.name == nf.name) model_fail(ModelError::Kind::invalid, "duplicate functional name '" + nf.name + "'");
      }
      detail::check_role_flags(nf);
      model.functionals.push_back(std::move(nf));
    }
  }
  if (j.contains("metadata") && j["metadata"].is_object()) {
    model.name = j["metadata"].value("name", "");
    model.description = j["metadata"].value("description", "");
  }
  return model;
}

inline FiniteModel parse_model(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(ModelError::Kind::parse, std::string("JSON parse error: ") + e.what());
  }
  return parse_model(j);
}

// Reads and validates a model file; "-" reads standard input.
inline FiniteModel load_model(const std::filesystem::path& path) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ModelError(ModelError::Kind::parse, "cannot open model file " + path.string());
    buffer << in.rdbuf();
  }
  return parse_model(std::string_view(buffer.str()));
}

// ---------------------------------------------------------------------------
// Serialisation

inline nlohmann::json propagator_to_json(const PropagatorMatrix<Rational>& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : p.values()) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

// Kernels in graded-lexicographic monomial order, zeros omitted.
inline nlohmann::json functional_to_json(const std::string& name, Role role, const Functional<Rational>& f,
                                         bool vanishing_one_point = false) {
  const auto& reg = *f.registry();
  nlohmann::json j;
  j["name"] = name;
  j["role"] = to_string(role);
  j["unit_value"] = to_string(f.unit_value());
  if (f.max_degree()) j["max_degree"] = *f.max_degree();
  if (vanishing_one_point) j["vanishing_one_point"] = true;
  nlohmann::json kernels = nlohmann::json::array();
  for (const auto& [m, v] : f.kernels()) {
    nlohmann::json names = nlohmann::json::array();
    for (LabelId id : m.ids()) names.push_back(reg.name(id));
    kernels.push_back({{"monomial", std::move(names)}, {"value", to_string(v)}});
  }
  j["kernels"] = std::move(kernels);
  return j;
}

inline nlohmann::json model_to_json(const FiniteModel& m) {
  const auto& reg = *m.registry;
  nlohmann::json j;
  nlohmann::json labels = nlohmann::json::array();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const auto id = static_cast<LabelId>(i);
    labels.push_back({{"name", reg.name(id)}, {"parity", reg.is_odd(id) ? "odd" : "even"}});
  }
  j["labels"] = std::move(labels);
  j["feynman_propagator"] = propagator_to_json(m.feynman_propagator);
  if (m.connected_propagator) j["connected_propagator"] = propagator_to_json(*m.connected_propagator);
  if (m.tree_level_propagator == PropagatorRole::connected2) j["tree_level_propagator"] = "connected";
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : m.functionals) fs.push_back(functional_to_json(f.name, f.role, f.functional, f.vanishing_one_point));
  j["functionals"] = std::move(fs);
  j["metadata"] = {{"name", m.name}, {"description", m.description}};
  return j;
}

// ---------------------------------------------------------------------------
// Pipelines

// rho = exp_*(sigma), tabulated up to degree_bound.
inline Functional<Rational> complete_from_connected(const FiniteModel& m, std::size_t degree_bound,
                                                    const std::optional<std::string>& name = std::nullopt) {
  return star_exp(m.find(Role::sigma, name).functional, degree_bound);
}

// sigma = log_*(rho), tabulated up to degree_bound.
inline Functional<Rational> connected_from_complete(const FiniteModel& m, std::size_t degree_bound,
                                                    const std::optional<std::string>& name = std::nullopt) {
  return star_log(m.find(Role::rho, name).functional, degree_bound);
}

inline Role vertex_role(Mode mode) {
  switch (mode) {
    case Mode::standard:
      return Role::tau;
    case Mode::modified:
      return Role::tau_hat;
    case Mode::tree_level:
      return Role::tau_tree;
  }
  return Role::tau;
}

// Connected function on `a` from the model's vertex functional for the mode,
// summing sigma^k for k = 1..k_max.
inline Rational connected_from_1pi(const FiniteModel& m, const AlgebraElement<Rational>& a, std::size_t k_max,
                                   Mode mode, const std::optional<std::string>& name = std::nullopt) {
  const auto& tau = m.find(vertex_role(mode), name).functional;
  return sigma_from_tau(tau, a, k_max, m.propagator_for(mode), mode);
}

}  // namespace npoint

#endif  // NPOINT_MODEL_HPP_
