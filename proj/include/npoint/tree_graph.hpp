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

// Trees whose vertices carry multisets of external legs.

#ifndef NPOINT_TREE_GRAPH_HPP_
#define NPOINT_TREE_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "npoint/field_algebra.hpp"

namespace npoint {

using Edge = std::pair<std::size_t, std::size_t>;

template <class S = Rational>
struct TreeGraph {
  std::vector<Monomial> legs;  // external legs, one multiset per vertex
  std::vector<Edge> edges;
  bool ordered = false;
  S weight = S(0);

  std::size_t vertex_count() const noexcept { return legs.size(); }

  std::size_t valence(std::size_t v) const {
    std::size_t d = legs.at(v).degree();
    for (const auto& [a, b] : edges) d += (a == v) + (b == v);
    return d;
  }

  std::size_t min_valence() const {
    std::size_t m = static_cast<std::size_t>(-1);
    for (std::size_t v = 0; v < vertex_count(); ++v) m = std::min(m, valence(v));
    return vertex_count() == 0 ? 0 : m;
  }

  // All external legs as one canonical multiset (ignoring fermion signs).
  std::vector<LabelId> external_labels() const {
    std::vector<LabelId> all;
    for (const auto& m : legs) all.insert(all.end(), m.ids().begin(), m.ids().end());
    std::sort(all.begin(), all.end());
    return all;
  }

  // Connected, acyclic, k-1 edges, endpoints in range, no self loops.
  bool is_tree() const {
    const std::size_t k = vertex_count();
    if (k == 0 || edges.size() != k - 1) return false;
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [a, b] : edges) {
      if (a >= k || b >= k || a == b) return false;
      const auto ra = find(a);
      const auto rb = find(b);
      if (ra == rb) return false;
      parent[ra] = rb;
    }
    return true;
  }
};

namespace detail {

inline std::vector<std::vector<std::size_t>> adjacency(std::size_t k, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(k);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

inline std::string leg_code(const Monomial& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.degree(); ++i) {
    if (i) s += ',';
    s += std::to_string(m.ids()[i]);
  }
  return s + "]";
}

// Vertices minimising the largest remaining component when removed.
inline std::vector<std::size_t> centroids(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t k = adj.size();
  std::vector<std::size_t> order;
  std::vector<std::size_t> parent(k, k);
  std::vector<std::size_t> subtree(k, 1);
  order.reserve(k);
  order.push_back(0);
  parent[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t w : adj[order[i]]) {
      if (parent[w] == k) {
        parent[w] = order[i];
        order.push_back(w);
      }
    }
  }
  for (std::size_t i = order.size(); i-- > 1;) subtree[parent[order[i]]] += subtree[order[i]];
  std::size_t best = k + 1;
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < k; ++v) {
    std::size_t largest = k - subtree[v];
    for (std::size_t w : adj[v]) {
      if (w != 0 && parent[w] == v) largest = std::max(largest, subtree[w]);
    }
    if (largest < best) {
      best = largest;
      out.assign(1, v);
    } else if (largest == best) {
      out.push_back(v);
    }
  }
  return out;
}

struct RootedCode {
  std::string code;
  std::vector<std::size_t> preorder;  // vertices in canonical order
};

inline RootedCode rooted_code(const std::vector<std::vector<std::size_t>>& adj, const std::vector<Monomial>& legs,
                              std::size_t root) {
  struct Node {
    std::string code;
    std::vector<std::size_t> preorder;
  };
  auto build = [&](auto&& self, std::size_t v, std::size_t from) -> Node {
    std::vector<Node> children;
    for (std::size_t w : adj[v]) {
      if (w != from) children.push_back(self(self, w, v));
    }
    std::sort(children.begin(), children.end(), [](const Node& a, const Node& b) { return a.code < b.code; });
    Node n;
    n.code = "(" + leg_code(legs[v]);
    n.preorder.push_back(v);
    for (auto& c : children) {
      n.code += c.code;
      n.preorder.insert(n.preorder.end(), c.preorder.begin(), c.preorder.end());
    }
    n.code += ")";
    return n;
  };
  Node n = build(build, root, adj.size());
  return {std::move(n.code), std::move(n.preorder)};
}

template <class S>
RootedCode canonical_rooting(const TreeGraph<S>& t) {
  const auto adj = adjacency(t.vertex_count(), t.edges);
  RootedCode best;
  bool first = true;
  for (std::size_t c : centroids(adj)) {
    auto rc = rooted_code(adj, t.legs, c);
    if (first || rc.code < best.code) {
      best = std::move(rc);
      first = false;
    }
  }
  return best;
}

}  // namespace detail

// Isomorphism-invariant code of an unordered decorated tree: the smallest
// AHU-style encoding over the tree's centroids, vertices tagged with their
// external-leg multisets.
template <class S>
std::string canonical_code(const TreeGraph<S>& t) {
  return detail::canonical_rooting(t).code;
}

// The tree relabelled into canonical vertex order (preorder of the canonical
// rooting); edges become (parent, child) with parent < child.
template <class S>
TreeGraph<S> canonical_form(const TreeGraph<S>& t) {
  const auto rc = detail::canonical_rooting(t);
  const std::size_t k = t.vertex_count();
  std::vector<std::size_t> position(k);
  for (std::size_t i = 0; i < k; ++i) position[rc.preorder[i]] = i;
  TreeGraph<S> out;
  out.ordered = false;
  out.weight = t.weight;
  out.legs.resize(k);
  for (std::size_t v = 0; v < k; ++v) out.legs[position[v]] = t.legs[v];
  for (const auto& [a, b] : t.edges) {
    auto pa = position[a];
    auto pb = position[b];
    out.edges.emplace_back(std::min(pa, pb), std::max(pa, pb));
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace npoint

#endif  // NPOINT_TREE_GRAPH_HPP_
