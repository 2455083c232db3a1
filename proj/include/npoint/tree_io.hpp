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

// Text, JSON and DOT renderings of weighted trees.

#ifndef NPOINT_TREE_IO_HPP_
#define NPOINT_TREE_IO_HPP_

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "npoint/field_algebra.hpp"
#include "npoint/rational.hpp"
#include "npoint/tree_graph.hpp"

namespace npoint {

inline std::string vertex_name(std::size_t v) { return "v" + std::to_string(v + 1); }

// One line per tree: weight, then each vertex with its legs, then the edges.
//   1/2   v1{} v2{x} v3{}   v1-v2 v2-v3
inline void write_tree_table(std::ostream& os, const LabelRegistry& reg, const std::vector<TreeGraph<Rational>>& trees) {
  for (const auto& t : trees) {
    os << to_string(t.weight) << '\t';
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
      if (v) os << ' ';
      os << vertex_name(v) << '{';
      for (std::size_t i = 0; i < t.legs[v].degree(); ++i) {
        if (i) os << ',';
        os << reg.name(t.legs[v].ids()[i]);
      }
      os << '}';
    }
    os << '\t';
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      if (e) os << ' ';
      os << vertex_name(t.edges[e].first) << '-' << vertex_name(t.edges[e].second);
    }
    if (t.edges.empty()) os << '-';
    os << '\n';
  }
}

inline nlohmann::json trees_to_json(const LabelRegistry& reg, const std::vector<TreeGraph<Rational>>& trees) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : trees) {
    nlohmann::json vertices = nlohmann::json::array();
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
      nlohmann::json legs = nlohmann::json::array();
      for (LabelId id : t.legs[v].ids()) legs.push_back(reg.name(id));
      vertices.push_back({{"id", vertex_name(v)}, {"legs", std::move(legs)}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : t.edges) edges.push_back({vertex_name(a), vertex_name(b)});
    nlohmann::json weight = {{"numerator", t.weight.get_num().get_str()},
                             {"denominator", t.weight.get_den().get_str()}};
    arr.push_back({{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"weight", std::move(weight)}});
  }
  return {{"trees", std::move(arr)}};
}

// One undirected graph per tree. Vertices are v1..vk; each external leg is a
// plaintext node labelled with its field name; the weight is the graph label.
inline void write_tree_dot(std::ostream& os, const LabelRegistry& reg, const std::vector<TreeGraph<Rational>>& trees) {
  for (std::size_t n = 0; n < trees.size(); ++n) {
    const auto& t = trees[n];
    os << "graph tree" << (n + 1) << " {\n";
    os << "  label=\"" << to_string(t.weight) << "\";\n";
    for (std::size_t v = 0; v < t.vertex_count(); ++v) os << "  " << vertex_name(v) << " [shape=circle];\n";
    for (const auto& [a, b] : t.edges) os << "  " << vertex_name(a) << " -- " << vertex_name(b) << ";\n";
    std::size_t leg = 0;
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
      for (LabelId id : t.legs[v].ids()) {
        ++leg;
        os << "  e" << leg << " [shape=plaintext, label=\"" << reg.name(id) << "\"];\n";
        os << "  " << vertex_name(v) << " -- e" << leg << ";\n";
      }
    }
    os << "}\n";
  }
}

}  // namespace npoint

#endif  // NPOINT_TREE_IO_HPP_
