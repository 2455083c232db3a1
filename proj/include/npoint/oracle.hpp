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

// Brute-force reference computations. Nothing here shares tree-construction
// code with the tree engine: trees are grown leaf by leaf, isomorphism is
// decided by trying every vertex permutation, and symmetry factors are
// counted the same way. Intended for small sizes only.

#ifndef NPOINT_ORACLE_HPP_
#define NPOINT_ORACLE_HPP_

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "npoint/errors.hpp"
#include "npoint/field_algebra.hpp"
#include "npoint/functional.hpp"
#include "npoint/tree_graph.hpp"

namespace npoint::oracle {

inline constexpr std::size_t kMaxVertices = 8;
inline constexpr std::size_t kMaxLegs = 8;

namespace detail {

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

inline EdgeList permuted(const EdgeList& edges, const std::vector<std::size_t>& perm) {
  EdgeList out;
  out.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    const auto pa = perm[a];
    const auto pb = perm[b];
    out.emplace_back(std::min(pa, pb), std::max(pa, pb));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline EdgeList normalized(EdgeList edges) {
  for (auto& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

// Lexicographically smallest edge list over all relabellings.
inline EdgeList brute_canonical(std::size_t k, const EdgeList& edges) {
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  EdgeList best = normalized(edges);
  do {
    auto candidate = permuted(edges, perm);
    if (candidate < best) best = std::move(candidate);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Unlabelled trees on k vertices, each as a canonical edge list.
inline std::vector<EdgeList> tree_shapes(std::size_t k) {
  std::set<EdgeList> level{EdgeList{}};
  for (std::size_t n = 1; n < k; ++n) {
    std::set<EdgeList> next;
    for (const auto& shape : level) {
      for (std::size_t v = 0; v < n; ++v) {
        EdgeList grown = shape;
        grown.emplace_back(v, n);
        next.insert(brute_canonical(n + 1, grown));
      }
    }
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

inline std::vector<std::vector<std::size_t>> automorphisms(std::size_t k, const EdgeList& edges) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  const EdgeList base = normalized(edges);
  do {
    if (permuted(edges, perm) == base) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace detail

// Every distinct unordered tree with k vertices whose external legs are the
// given multiset of labels, keeping only trees with all valences >= min_valence.
// Weights are left at zero.
template <class S = Rational>
std::vector<TreeGraph<S>> enumerate_trees(std::size_t k, std::span<const LabelId> externals,
                                          std::size_t min_valence = 0) {
  if (k == 0) throw Error("enumerate_trees needs k >= 1");
  if (k > kMaxVertices) throw OracleCap("oracle supports at most " + std::to_string(kMaxVertices) + " vertices");
  if (externals.size() > kMaxLegs) throw OracleCap("oracle supports at most " + std::to_string(kMaxLegs) + " legs");

  std::vector<TreeGraph<S>> out;
  for (const auto& shape : detail::tree_shapes(k)) {
    const auto autos = detail::automorphisms(k, shape);
    std::vector<std::size_t> degree(k, 0);
    for (const auto& [a, b] : shape) {
      ++degree[a];
      ++degree[b];
    }
    std::set<std::vector<std::vector<LabelId>>> seen;
    std::vector<std::size_t> where(externals.size(), 0);
    while (true) {
      std::vector<std::vector<LabelId>> legs(k);
      for (std::size_t p = 0; p < externals.size(); ++p) legs[where[p]].push_back(externals[p]);
      for (auto& l : legs) std::sort(l.begin(), l.end());
      // Representative of the orbit under the shape's automorphisms.
      std::vector<std::vector<LabelId>> best;
      for (const auto& perm : autos) {
        std::vector<std::vector<LabelId>> image(k);
        for (std::size_t v = 0; v < k; ++v) image[perm[v]] = legs[v];
        if (best.empty() || image < best) best = std::move(image);
      }
      bool valence_ok = true;
      for (std::size_t v = 0; v < k; ++v) valence_ok = valence_ok && degree[v] + best[v].size() >= min_valence;
      if (valence_ok && seen.insert(best).second) {
        TreeGraph<S> t;
        for (const auto& l : best) t.legs.push_back(Monomial::from_sorted(l));
        t.edges.assign(shape.begin(), shape.end());
        out.push_back(std::move(t));
      }
      std::size_t p = 0;
      while (p < where.size() && ++where[p] == k) where[p++] = 0;
      if (p == where.size()) break;
    }
  }
  return out;
}

// Number of vertex permutations preserving edges and leg decorations.
template <class S>
std::size_t symmetry_factor(const TreeGraph<S>& t) {
  const std::size_t k = t.vertex_count();
  if (k > kMaxVertices) throw OracleCap("oracle supports at most " + std::to_string(kMaxVertices) + " vertices");
  detail::EdgeList edges(t.edges.begin(), t.edges.end());
  std::size_t count = 0;
  for (const auto& perm : detail::automorphisms(k, edges)) {
    bool same = true;
    for (std::size_t v = 0; v < k && same; ++v) same = t.legs[perm[v]] == t.legs[v];
    count += same ? 1 : 0;
  }
  return count;
}

// Sign of reordering a word of (slot, label) pairs into (slot, label) order,
// counting only exchanges of odd labels. Zero if an odd label repeats in a slot.
inline int slot_word_sign(const LabelRegistry& reg, std::vector<std::pair<std::size_t, LabelId>> word) {
  int sign = 1;
  for (std::size_t i = 0; i < word.size(); ++i) {
    for (std::size_t j = i + 1; j < word.size(); ++j) {
      if (word[i] == word[j] && reg.is_odd(word[i].second)) return 0;
      if (word[j] < word[i] && reg.is_odd(word[i].second) && reg.is_odd(word[j].second)) sign = -sign;
    }
  }
  return sign;
}

// sum over unordered set partitions {I_1..I_m} of the word's positions of
// prod_j sigma(I_j), with the Koszul sign of regrouping the word by blocks.
template <class S>
S partition_sum(const Functional<S>& sigma, std::span<const LabelId> word) {
  const std::size_t n = word.size();
  if (n > kMaxLegs) throw OracleCap("partition oracle supports at most " + std::to_string(kMaxLegs) + " legs");
  const auto& reg = *sigma.registry();
  if (n == 0) return S(1);  // the single empty partition
  S total(0);
  std::vector<std::size_t> block(n, 0);  // restricted growth string
  while (true) {
    const std::size_t blocks = *std::max_element(block.begin(), block.end()) + 1;
    // Regrouping by block keeps the original order inside each block; count
    // odd exchanges directly on block indices.
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (block[j] < block[i] && reg.is_odd(word[i]) && reg.is_odd(word[j])) sign = -sign;
      }
    }
    S product(sign);
    for (std::size_t b = 0; b < blocks && product != S(0); ++b) {
      std::vector<LabelId> part;
      for (std::size_t p = 0; p < n; ++p) {
        if (block[p] == b) part.push_back(word[p]);
      }
      const auto sm = make_monomial(reg, part);
      product = sm.is_zero() ? S(0) : S(product * S(sm.sign) * sigma.value(sm.monomial));
    }
    total += product;
    // Next restricted growth string.
    std::size_t i = n;
    while (i-- > 1) {
      const std::size_t limit = *std::max_element(block.begin(), block.begin() + static_cast<std::ptrdiff_t>(i)) + 1;
      if (block[i] < limit) {
        ++block[i];
        std::fill(block.begin() + static_cast<std::ptrdiff_t>(i) + 1, block.end(), 0);
        break;
      }
    }
    if (i == 0) break;
  }
  return total;
}

// Reference value of sigma^k on the product of the word's generators: the sum
// over all trees with k vertices carrying the word's legs (treated as
// distinguishable), each weighted by 1/s, with vertex values from tau and one
// inverse-propagator entry per internal edge summed over label pairs.
template <class S>
S tree_sum(const Functional<S>& tau, const std::vector<std::vector<S>>& inverse_propagator,
           std::span<const LabelId> word, std::size_t k) {
  const auto& reg = *tau.registry();
  const std::size_t n = word.size();
  const std::size_t labels = reg.size();
  std::vector<LabelId> positions(n);
  std::iota(positions.begin(), positions.end(), LabelId{0});
  S total(0);
  for (const auto& tree : enumerate_trees<S>(k, positions, 0)) {
    const std::size_t s = symmetry_factor(tree);
    std::vector<std::size_t> vertex_of(n);
    for (std::size_t v = 0; v < k; ++v) {
      for (LabelId p : tree.legs[v].ids()) vertex_of[p] = v;
    }
    const std::size_t ends = 2 * tree.edges.size();
    std::vector<LabelId> end_label(ends, 0);
    S tree_value(0);
    while (true) {
      S value(1);
      for (std::size_t e = 0; e < tree.edges.size() && value != S(0); ++e) {
        value *= inverse_propagator[end_label[2 * e]][end_label[2 * e + 1]];
      }
      if (value != S(0)) {
        std::vector<std::pair<std::size_t, LabelId>> slot_word;
        for (std::size_t e = 0; e < tree.edges.size(); ++e) {
          slot_word.emplace_back(tree.edges[e].first, end_label[2 * e]);
          slot_word.emplace_back(tree.edges[e].second, end_label[2 * e + 1]);
        }
        for (std::size_t p = 0; p < n; ++p) slot_word.emplace_back(vertex_of[p], word[p]);
        const int sign = slot_word_sign(reg, slot_word);
        value *= S(sign);
        std::vector<std::vector<LabelId>> at(k);
        for (const auto& [v, l] : slot_word) at[v].push_back(l);
        for (std::size_t v = 0; v < k && value != S(0); ++v) {
          std::sort(at[v].begin(), at[v].end());
          value *= tau.value(Monomial::from_sorted(at[v]));
        }
        tree_value += value;
      }
      std::size_t i = 0;
      while (i < ends && ++end_label[i] == labels) end_label[i++] = 0;
      if (i == ends) break;
    }
    total += tree_value / S(static_cast<long>(s));
  }
  return total;
}

}  // namespace npoint::oracle

#endif  // NPOINT_ORACLE_HPP_
