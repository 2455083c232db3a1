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

// Coproduct, counit, iterated and truncated coproducts on S(V).
//
// The coproduct distributes the generators of a monomial over two ordered
// tensor slots in all possible ways. A summand picks up the Koszul sign of
// extracting the left subset from canonical order; repeated bosonic
// generators give binomial multiplicities.

#ifndef NPOINT_COALGEBRA_HPP_
#define NPOINT_COALGEBRA_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "npoint/errors.hpp"
#include "npoint/field_algebra.hpp"

namespace npoint {

// Selects Delta (min_degree 0) or the truncated Delta_{>=m}, which drops every
// summand with a tensor factor of degree below m.
struct Truncation {
  unsigned min_degree = 0;

  static constexpr Truncation none() { return {0}; }
  static constexpr Truncation at_least(unsigned m) { return {m}; }
  bool operator==(const Truncation&) const = default;
};

struct MonomialSplit {
  Monomial left;
  Monomial right;
  std::int64_t coefficient;  // multiplicity times Koszul sign
};

// All summands of Delta(m), truncated as requested.
inline std::vector<MonomialSplit> split_monomial(const LabelRegistry& reg, const Monomial& m,
                                                 Truncation trunc = Truncation::none()) {
  struct Run {
    LabelId id;
    unsigned count;
    bool odd;
  };
  std::vector<Run> runs;
  for (LabelId id : m.ids()) {
    if (!runs.empty() && runs.back().id == id) {
      ++runs.back().count;
    } else {
      runs.push_back({id, 1, reg.is_odd(id)});
    }
  }

  std::vector<MonomialSplit> out;
  const std::size_t n = m.degree();
  if (trunc.min_degree > 0 && n < 2 * static_cast<std::size_t>(trunc.min_degree)) return out;

  std::vector<LabelId> left;
  std::vector<LabelId> right;
  left.reserve(n);
  right.reserve(n);

  auto binomial = [](unsigned a, unsigned b) {
    std::int64_t r = 1;
    for (unsigned i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };

  // odd_right counts odd generators already placed on the right; an odd
  // generator sent left has to cross all of them.
  auto recurse = [&](auto&& self, std::size_t run, std::int64_t coef, unsigned odd_right) -> void {
    if (run == runs.size()) {
      if (left.size() < trunc.min_degree || right.size() < trunc.min_degree) return;
      out.push_back({Monomial::from_sorted(left), Monomial::from_sorted(right), coef});
      return;
    }
    const Run& r = runs[run];
    if (r.odd) {
      left.push_back(r.id);
      self(self, run + 1, (odd_right & 1u) ? -coef : coef, odd_right);
      left.pop_back();
      right.push_back(r.id);
      self(self, run + 1, coef, odd_right + 1);
      right.pop_back();
      return;
    }
    for (unsigned j = 0; j <= r.count; ++j) {
      left.insert(left.end(), j, r.id);
      right.insert(right.end(), r.count - j, r.id);
      self(self, run + 1, coef * binomial(r.count, j), odd_right);
      left.resize(left.size() - j);
      right.resize(right.size() - (r.count - j));
    }
  };
  recurse(recurse, 0, 1, 0);
  return out;
}

template <class S>
TensorElement<S> coproduct(const AlgebraElement<S>& a, Truncation trunc = Truncation::none()) {
  TensorElement<S> out(a.registry(), 2);
  for (const auto& [m, c] : a.terms()) {
    for (auto& split : split_monomial(*a.registry(), m, trunc)) {
      out.add_term(TensorKey{std::move(split.left), std::move(split.right)}, S(c * S(split.coefficient)));
    }
  }
  return out;
}

// Delta_{>=m}; m must be positive.
template <class S>
TensorElement<S> truncated_coproduct(const AlgebraElement<S>& a, unsigned m) {
  if (m == 0) throw Error("truncated_coproduct needs m >= 1");
  return coproduct(a, Truncation::at_least(m));
}

// Coefficient of the unit.
template <class S>
S counit(const AlgebraElement<S>& a) {
  return a.coefficient(Monomial{});
}

// Applies Delta to slot `slot` (0-based) of every term, producing rank k+1.
// Delta is an even map, so untouched slots contribute no sign.
template <class S>
TensorElement<S> coproduct_at(const TensorElement<S>& t, std::size_t slot, Truncation trunc = Truncation::none()) {
  if (slot >= t.rank()) throw SlotOutOfRange("coproduct_at: slot " + std::to_string(slot) + " out of range");
  TensorElement<S> out(t.registry(), t.rank() + 1);
  const auto& reg = *t.registry();
  for (const auto& [key, c] : t.terms()) {
    for (auto& split : split_monomial(reg, key[slot], trunc)) {
      TensorKey next;
      next.reserve(key.size() + 1);
      next.insert(next.end(), key.begin(), key.begin() + static_cast<std::ptrdiff_t>(slot));
      next.push_back(std::move(split.left));
      next.push_back(std::move(split.right));
      next.insert(next.end(), key.begin() + static_cast<std::ptrdiff_t>(slot) + 1, key.end());
      out.add_term(std::move(next), S(c * S(split.coefficient)));
    }
  }
  return out;
}

// Delta^k: Delta^0 = id, Delta^{k} = (Delta (x) id^{k-1}) o Delta^{k-1}.
template <class S>
TensorElement<S> iterated_coproduct(const AlgebraElement<S>& a, std::size_t k) {
  TensorElement<S> t = TensorElement<S>::from_element(a);
  for (std::size_t i = 0; i < k; ++i) t = coproduct_at(t, 0);
  return t;
}

}  // namespace npoint

#endif  // NPOINT_COALGEBRA_HPP_
