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

// Tree generation from the coproduct: the edge element R, the split-and-
// reconnect map Q = R o Delta / 2, the recursion
//
//   Lambda^0 = id,   Lambda^k = (1/k) sum_i Q_i o Lambda^{k-1},
//
// and the connected-from-1PI sums sigma^k = tau^{(x)k} o Lambda^{k-1}.
//
// Two representations are provided. The concrete one works in
// S(V)^{(x)k} with R expanded over label pairs. The graph one keeps each
// inserted edge as a symbolic pair of slot indices, so the tree topology of
// every term can be read back and weights stay free of propagator factors.

#ifndef NPOINT_TREE_ENGINE_HPP_
#define NPOINT_TREE_ENGINE_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "npoint/coalgebra.hpp"
#include "npoint/errors.hpp"
#include "npoint/field_algebra.hpp"
#include "npoint/functional.hpp"
#include "npoint/propagator.hpp"
#include "npoint/tree_graph.hpp"

namespace npoint {

// R = sum_{x,y} P^{-1}(x,y) phi(x) (x) phi(y), over ordered label pairs.
template <class S>
TensorElement<S> build_R(const PropagatorMatrix<S>& p) {
  TensorElement<S> r(p.registry(), 2);
  const std::size_t n = p.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const S& v = p.inverse_at(static_cast<LabelId>(x), static_cast<LabelId>(y));
      if (v == S(0)) continue;
      r.add_term(TensorKey{Monomial::from_sorted({static_cast<LabelId>(x)}),
                           Monomial::from_sorted({static_cast<LabelId>(y)})},
                 v);
    }
  }
  return r;
}

// R_{i,j}: the two factors of R placed in slots i < j of a rank-k tensor.
template <class S>
TensorElement<S> place_pair(const TensorElement<S>& r, std::size_t i, std::size_t j, std::size_t rank) {
  if (r.rank() != 2) throw RankMismatch("place_pair needs a rank-2 element");
  if (!(i < j && j < rank)) throw SlotOutOfRange("place_pair: need i < j < rank");
  TensorElement<S> out(r.registry(), rank);
  for (const auto& [key, c] : r.terms()) {
    TensorKey k(rank);
    k[i] = key[0];
    k[j] = key[1];
    out.add_term(std::move(k), c);
  }
  return out;
}

// Q_i = 1/2 R_{i,i+1} . Delta_i on a rank-k tensor (slot is 0-based).
template <class S>
TensorElement<S> apply_Q(const TensorElement<S>& t, std::size_t slot, const TensorElement<S>& r,
                         Truncation trunc = Truncation::none()) {
  if (slot >= t.rank()) throw SlotOutOfRange("apply_Q: slot " + std::to_string(slot) + " out of range");
  const TensorElement<S> split = coproduct_at(t, slot, trunc);
  TensorElement<S> out = tensor_multiply(place_pair(r, slot, slot + 1, t.rank() + 1), split);
  out *= S(S(1) / S(2));
  return out;
}

template <class S>
TensorElement<S> apply_Q(const TensorElement<S>& t, std::size_t slot, const PropagatorMatrix<S>& p,
                         Truncation trunc = Truncation::none()) {
  return apply_Q(t, slot, build_R(p), trunc);
}

// Lambda^k(a) as a rank-(k+1) tensor.
template <class S>
TensorElement<S> lambda(const AlgebraElement<S>& a, std::size_t k, const TensorElement<S>& r,
                        Truncation trunc = Truncation::none()) {
  detail::require_same_registry(a.registry(), r.registry());
  TensorElement<S> current = TensorElement<S>::from_element(a);
  for (std::size_t step = 1; step <= k; ++step) {
    TensorElement<S> next(a.registry(), step + 1);
    for (std::size_t i = 0; i < step; ++i) next += apply_Q(current, i, r, trunc);
    next *= S(S(1) / S(static_cast<long>(step)));
    current = std::move(next);
  }
  return current;
}

template <class S>
TensorElement<S> lambda(const AlgebraElement<S>& a, std::size_t k, const PropagatorMatrix<S>& p,
                        Truncation trunc = Truncation::none()) {
  return lambda(a, k, build_R(p), trunc);
}

// Lambda^{k-1} evaluated through the pair-of-subtrees recursion
//
//   Lambda^{k-1} = 1/(2(k-1)) sum_{i=1}^{k-1}
//                  (sum_{a<=i<b} R_{a,b}) . (Lambda^{i-1} (x) Lambda^{k-i-1}) o Delta.
template <class S>
class PairgraphLambda {
 public:
  explicit PairgraphLambda(TensorElement<S> r) : r_(std::move(r)) {
    if (r_.rank() != 2) throw RankMismatch("PairgraphLambda needs a rank-2 R");
  }

  // Rank-`vertices` tensor equal to Lambda^{vertices-1}(a).
  TensorElement<S> operator()(const AlgebraElement<S>& a, std::size_t vertices) {
    if (vertices == 0) throw Error("pairgraph_lambda needs at least one vertex");
    detail::require_same_registry(a.registry(), r_.registry());
    TensorElement<S> out(a.registry(), vertices);
    for (const auto& [m, c] : a.terms()) out += of_monomial(m, vertices) * c;
    return out;
  }

 private:
  const TensorElement<S>& of_monomial(const Monomial& m, std::size_t vertices) {
    auto key = std::make_pair(m, vertices);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const RegistryPtr& reg = r_.registry();
    TensorElement<S> result(reg, vertices);
    if (vertices == 1) {
      result.add_term(TensorKey{m}, S(1));
    } else {
      const auto splits = split_monomial(*reg, m);
      for (std::size_t i = 1; i < vertices; ++i) {
        TensorElement<S> halves(reg, vertices);
        for (const auto& s : splits) {
          const TensorElement<S>& left = of_monomial(s.left, i);
          const TensorElement<S>& right = of_monomial(s.right, vertices - i);
          halves += tensor_concat(left, right) * S(s.coefficient);
        }
        TensorElement<S> bridges(reg, vertices);
        for (std::size_t a = 0; a < i; ++a) {
          for (std::size_t b = i; b < vertices; ++b) bridges += place_pair(r_, a, b, vertices);
        }
        result += tensor_multiply(bridges, halves);
      }
      result *= S(S(1) / S(static_cast<long>(2 * (vertices - 1))));
    }
    return memo_.emplace(std::move(key), std::move(result)).first->second;
  }

  TensorElement<S> r_;
  std::map<std::pair<Monomial, std::size_t>, TensorElement<S>> memo_;
};

template <class S>
TensorElement<S> pairgraph_lambda(const AlgebraElement<S>& a, std::size_t vertices, const TensorElement<S>& r) {
  PairgraphLambda<S> engine(r);
  return engine(a, vertices);
}

// ---------------------------------------------------------------------------
// Graph representation

// One ordered graph: per-slot external legs plus the internal edges as slot
// pairs (lower slot first). Edges are kept sorted.
struct OrderedGraph {
  std::vector<Monomial> legs;
  std::vector<std::pair<std::uint16_t, std::uint16_t>> edges;

  auto operator<=>(const OrderedGraph&) const = default;
  bool operator==(const OrderedGraph&) const = default;
};

// Linear combination of ordered trees. Coefficients are purely combinatorial:
// each edge stands for one factor R_{a,b}, whose propagator entries are not
// expanded.
template <class S = Rational>
class GraphTensor {
 public:
  GraphTensor(RegistryPtr reg, std::size_t rank) : reg_(std::move(reg)), rank_(rank) {}

  static GraphTensor from_element(const AlgebraElement<S>& a) {
    GraphTensor g(a.registry(), 1);
    for (const auto& [m, c] : a.terms()) g.add_term(OrderedGraph{{m}, {}}, c);
    return g;
  }

  const RegistryPtr& registry() const noexcept { return reg_; }
  std::size_t rank() const noexcept { return rank_; }
  const std::map<OrderedGraph, S>& terms() const& noexcept { return terms_; }
  std::map<OrderedGraph, S> terms() && noexcept { return std::move(terms_); }
  bool is_zero() const noexcept { return terms_.empty(); }

  // Rejects terms whose edges do not form a tree on `rank` vertices.
  void add_term(OrderedGraph g, const S& c) {
    validate(g);
    detail::accumulate(terms_, std::move(g), c);
  }

  GraphTensor& operator+=(const GraphTensor& o) {
    detail::require_same_registry(reg_, o.reg_);
    if (rank_ != o.rank_) throw RankMismatch("graph tensor ranks differ");
    for (const auto& [g, c] : o.terms_) detail::accumulate(terms_, g, c);
    return *this;
  }
  GraphTensor& operator*=(const S& s) {
    if (detail::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [g, c] : terms_) c *= s;
    return *this;
  }

 private:
  friend struct GraphTensorAccess;

  void validate(OrderedGraph& g) const {
    if (g.legs.size() != rank_) throw NonTreeInput("graph term has wrong number of vertices");
    for (auto& e : g.edges) {
      if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(g.edges.begin(), g.edges.end());
    TreeGraph<S> t;
    t.legs = g.legs;
    for (const auto& [a, b] : g.edges) t.edges.emplace_back(a, b);
    if (!t.is_tree()) throw NonTreeInput("graph term is not a tree");
    for (const auto& m : g.legs) {
      for (LabelId id : m.ids()) (void)reg_->parity(id);
    }
  }

  RegistryPtr reg_;
  std::size_t rank_;
  std::map<OrderedGraph, S> terms_;
};

struct GraphTensorAccess {
  template <class S>
  static void accumulate(GraphTensor<S>& g, OrderedGraph&& key, const S& c) {
    detail::accumulate(g.terms_, std::move(key), c);
  }
};

// Q_i on the graph representation: the external legs of vertex `slot` are
// split by the coproduct, its edge ends go left or right in all ways, and the
// two halves are joined by a new edge. Truncation counts edge ends as legs.
template <class S>
GraphTensor<S> apply_Q(const GraphTensor<S>& g, std::size_t slot, Truncation trunc = Truncation::none()) {
  if (slot >= g.rank()) throw SlotOutOfRange("apply_Q: slot " + std::to_string(slot) + " out of range");
  GraphTensor<S> out(g.registry(), g.rank() + 1);
  const auto& reg = *g.registry();
  const S half = S(S(1) / S(2));
  const auto shift = [slot](std::uint16_t v) -> std::uint16_t { return v > slot ? v + 1 : v; };

  for (const auto& [graph, c] : g.terms()) {
    std::vector<std::size_t> incident;
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      if (graph.edges[e].first == slot || graph.edges[e].second == slot) incident.push_back(e);
    }
    const std::size_t h = incident.size();
    const auto splits = split_monomial(reg, graph.legs[slot]);
    for (const auto& split : splits) {
      for (std::uint32_t mask = 0; mask < (1u << h); ++mask) {
        const std::size_t kept = static_cast<std::size_t>(std::popcount(mask));
        if (split.left.degree() + kept < trunc.min_degree) continue;
        if (split.right.degree() + (h - kept) < trunc.min_degree) continue;

        OrderedGraph next;
        next.legs.reserve(graph.legs.size() + 1);
        for (std::size_t v = 0; v < graph.legs.size(); ++v) {
          if (v == slot) {
            next.legs.push_back(split.left);
            next.legs.push_back(split.right);
          } else {
            next.legs.push_back(graph.legs[v]);
          }
        }
        next.edges.reserve(graph.edges.size() + 1);
        std::size_t bit = 0;
        for (std::size_t e = 0; e < graph.edges.size(); ++e) {
          auto [a, b] = graph.edges[e];
          if (bit < h && incident[bit] == e) {
            const bool stays = (mask >> bit) & 1u;
            const auto moved = static_cast<std::uint16_t>(stays ? slot : slot + 1);
            if (a == slot) a = moved; else a = shift(a);
            if (b == slot) b = moved; else b = shift(b);
            ++bit;
          } else {
            a = shift(a);
            b = shift(b);
          }
          next.edges.emplace_back(a, b);
        }
        next.edges.emplace_back(static_cast<std::uint16_t>(slot), static_cast<std::uint16_t>(slot + 1));
        std::sort(next.edges.begin(), next.edges.end());
        GraphTensorAccess::accumulate(out, std::move(next), S(c * S(split.coefficient) * half));
      }
    }
  }
  return out;
}

// Lambda^k(a) with edge provenance; rank k+1.
template <class S>
GraphTensor<S> lambda_trees(const AlgebraElement<S>& a, std::size_t k, Truncation trunc = Truncation::none()) {
  GraphTensor<S> current = GraphTensor<S>::from_element(a);
  for (std::size_t step = 1; step <= k; ++step) {
    GraphTensor<S> next(a.registry(), step + 1);
    for (std::size_t i = 0; i < step; ++i) next += apply_Q(current, i, trunc);
    next *= S(S(1) / S(static_cast<long>(step)));
    current = std::move(next);
  }
  return current;
}

// Expands every symbolic edge into R_{a,b}, giving the concrete tensor.
template <class S>
TensorElement<S> realize(const GraphTensor<S>& g, const TensorElement<S>& r) {
  detail::require_same_registry(g.registry(), r.registry());
  TensorElement<S> out(g.registry(), g.rank());
  for (const auto& [graph, c] : g.terms()) {
    TensorElement<S> term(g.registry(), g.rank());
    term.add_term(TensorKey(graph.legs), c);
    for (const auto& [a, b] : graph.edges) term = tensor_multiply(place_pair(r, a, b, g.rank()), term);
    out += term;
  }
  return out;
}

// Groups ordered trees into unordered ones and sums their weights. Each
// ordered weight is normalised by the Koszul sign of concatenating its
// vertices' legs, so fermionic legs aggregate like bosonic ones. Output is
// sorted by canonical code; zero-weight classes are dropped.
template <class S>
std::vector<TreeGraph<S>> extract_trees(const GraphTensor<S>& g) {
  const auto& reg = *g.registry();
  std::map<std::string, TreeGraph<S>> classes;
  for (const auto& [graph, c] : g.terms()) {
    TreeGraph<S> t;
    t.legs = graph.legs;
    for (const auto& [a, b] : graph.edges) t.edges.emplace_back(a, b);
    if (!t.is_tree()) throw NonTreeInput("term without tree structure");
    std::vector<LabelId> word;
    for (const auto& m : graph.legs) word.insert(word.end(), m.ids().begin(), m.ids().end());
    const int sign = make_monomial(reg, word).sign;
    auto rc = detail::canonical_rooting(t);
    auto it = classes.find(rc.code);
    if (it == classes.end()) {
      TreeGraph<S> canon = canonical_form(t);
      canon.weight = S(0);
      it = classes.emplace(rc.code, std::move(canon)).first;
    }
    it->second.weight += S(c * S(sign));
  }
  std::vector<TreeGraph<S>> out;
  for (auto& [code, t] : classes) {
    if (!detail::is_zero(t.weight)) out.push_back(std::move(t));
  }
  return out;
}

// The ordered trees of a graph tensor, one per term, without aggregation.
template <class S>
std::vector<TreeGraph<S>> ordered_trees(const GraphTensor<S>& g) {
  std::vector<TreeGraph<S>> out;
  for (const auto& [graph, c] : g.terms()) {
    TreeGraph<S> t;
    t.legs = graph.legs;
    for (const auto& [a, b] : graph.edges) t.edges.emplace_back(a, b);
    t.ordered = true;
    t.weight = c;
    out.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Connected functions from vertex functions

// standard:   1PI vertices tau, Feynman propagator, Delta_{>=1}.
// modified:   modified 1PI vertices, connected propagator, Delta_{>=2}.
// tree_level: interaction vertices, Delta_{>=2}.
enum class Mode { standard, modified, tree_level };

inline Truncation mode_truncation(Mode mode) {
  return mode == Mode::standard ? Truncation::at_least(1) : Truncation::at_least(2);
}

inline const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::standard:
      return "standard";
    case Mode::modified:
      return "modified";
    case Mode::tree_level:
      return "tree_level";
  }
  return "?";
}

template <class S>
void check_mode_flags(const Functional<S>& tau, Mode mode) {
  if (!tau.vanishes_at_degree(0)) throw ModeMismatch("vertex functional must vanish on the unit");
  if (!tau.vanishes_at_degree(1)) throw ModeMismatch("vertex functional must have vanishing 1-point values");
  if (mode != Mode::standard && !tau.vanishes_at_degree(2)) {
    throw ModeMismatch(std::string("mode ") + to_string(mode) + " needs vanishing 2-point values");
  }
}

// sigma^k(a) = tau^{(x)k}(Lambda^{k-1}(a)), with the mode's truncation.
template <class S>
S sigma_k(const Functional<S>& tau, const AlgebraElement<S>& a, std::size_t k, const PropagatorMatrix<S>& p,
          Mode mode) {
  if (k == 0) throw Error("sigma_k needs k >= 1");
  check_mode_flags(tau, mode);
  return evaluate_power(tau, lambda(a, k - 1, build_R(p), mode_truncation(mode)));
}

// sum_{k=1}^{k_max} sigma^k(a). In modified and tree_level mode the series
// is finite and stops as soon as Lambda vanishes.
template <class S>
S sigma_from_tau(const Functional<S>& tau, const AlgebraElement<S>& a, std::size_t k_max,
                 const PropagatorMatrix<S>& p, Mode mode) {
  check_mode_flags(tau, mode);
  const TensorElement<S> r = build_R(p);
  const Truncation trunc = mode_truncation(mode);
  S total(0);
  TensorElement<S> current = TensorElement<S>::from_element(a);
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k > 1) {
      const std::size_t step = k - 1;
      TensorElement<S> next(a.registry(), k);
      for (std::size_t i = 0; i < step; ++i) next += apply_Q(current, i, r, trunc);
      next *= S(S(1) / S(static_cast<long>(step)));
      current = std::move(next);
    }
    if (current.is_zero()) break;
    total += evaluate_power(tau, current);
  }
  return total;
}

// sigma^k through the pairwise recursion sigma^1 = tau,
//   sigma^k = 1/(k-1) sum_{i=1}^{k-1} (sigma^i (x) sigma^{k-i}) o Q.
// Values are memoised per (k, monomial).
template <class S>
class RecursiveSigma {
 public:
  RecursiveSigma(Functional<S> tau, const PropagatorMatrix<S>& p, Mode mode)
      : tau_(std::move(tau)), r_(build_R(p)), trunc_(mode_truncation(mode)) {
    detail::require_same_registry(tau_.registry(), p.registry());
    check_mode_flags(tau_, mode);
  }

  S operator()(std::size_t k, const AlgebraElement<S>& a) {
    S total(0);
    for (const auto& [m, c] : a.terms()) total += c * value(k, m);
    return total;
  }

  S value(std::size_t k, const Monomial& m) {
    if (k == 0) throw Error("sigma^k needs k >= 1");
    if (k == 1) return tau_.value(m);
    auto key = std::make_pair(k, m);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const TensorElement<S>& q = q_of(m);
    S total(0);
    for (std::size_t i = 1; i < k; ++i) {
      for (const auto& [qk, c] : q.terms()) {
        const S left = value(i, qk[0]);
        if (detail::is_zero(left)) continue;
        total += c * left * value(k - i, qk[1]);
      }
    }
    total /= S(static_cast<long>(k - 1));
    memo_.emplace(std::move(key), total);
    return total;
  }

 private:
  // Q(m) = 1/2 R . Delta(m). The mode truncation only drops summands on
  // which every sigma^i vanishes.
  const TensorElement<S>& q_of(const Monomial& m) {
    if (auto it = q_memo_.find(m); it != q_memo_.end()) return it->second;
    AlgebraElement<S> a(tau_.registry());
    a.add_term(m, S(1));
    TensorElement<S> q = tensor_multiply(r_, coproduct(a, trunc_));
    q *= S(S(1) / S(2));
    return q_memo_.emplace(m, std::move(q)).first->second;
  }

  Functional<S> tau_;
  TensorElement<S> r_;
  Truncation trunc_;
  std::map<std::pair<std::size_t, Monomial>, S> memo_;
  std::map<Monomial, TensorElement<S>> q_memo_;
};

}  // namespace npoint

#endif  // NPOINT_TREE_ENGINE_HPP_
