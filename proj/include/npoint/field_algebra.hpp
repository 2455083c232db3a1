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

// Graded symmetric algebra S(V) over a finite set of field generators.
//
// Generators carry a Z2 parity. Monomials are stored as non-decreasing id
// sequences; an odd generator appears at most once in a non-zero monomial.
// All reordering signs follow the Koszul rule: exchanging two odd generators
// contributes a factor -1.

#ifndef NPOINT_FIELD_ALGEBRA_HPP_
#define NPOINT_FIELD_ALGEBRA_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "npoint/errors.hpp"
#include "npoint/rational.hpp"

namespace npoint {

enum class Parity : std::uint8_t { even = 0, odd = 1 };

using LabelId = std::uint16_t;

struct FieldLabel {
  LabelId id = 0;
  Parity parity = Parity::even;

  bool operator==(const FieldLabel&) const = default;
};

class LabelRegistry {
 public:
  LabelRegistry() = default;
  LabelRegistry(std::initializer_list<std::pair<std::string, Parity>> labels) {
    for (const auto& [name, parity] : labels) add(name, parity);
  }

  // Registers a new generator; ids are assigned in registration order.
  LabelId add(std::string name, Parity parity = Parity::even) {
    if (find(name)) throw Error("duplicate label name '" + name + "'");
    if (names_.size() >= 0xFFFF) throw Error("label registry is full");
    names_.push_back(std::move(name));
    parities_.push_back(parity);
    return static_cast<LabelId>(names_.size() - 1);
  }

  std::size_t size() const noexcept { return names_.size(); }
  bool contains(LabelId id) const noexcept { return id < names_.size(); }

  Parity parity(LabelId id) const {
    check(id);
    return parities_[id];
  }
  bool is_odd(LabelId id) const { return parity(id) == Parity::odd; }

  const std::string& name(LabelId id) const {
    check(id);
    return names_[id];
  }

  FieldLabel label(LabelId id) const { return {id, parity(id)}; }

  std::optional<LabelId> find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return static_cast<LabelId>(i);
    }
    return std::nullopt;
  }

  LabelId id(std::string_view name) const {
    if (auto found = find(name)) return *found;
    throw UnknownGenerator("unknown generator '" + std::string(name) + "'");
  }

  bool has_odd() const {
    return std::find(parities_.begin(), parities_.end(), Parity::odd) != parities_.end();
  }

  bool operator==(const LabelRegistry&) const = default;

 private:
  void check(LabelId id) const {
    if (id >= names_.size()) throw UnknownGenerator("unknown generator id " + std::to_string(id));
  }

  std::vector<std::string> names_;
  std::vector<Parity> parities_;
};

using RegistryPtr = std::shared_ptr<const LabelRegistry>;

template <class... Args>
RegistryPtr make_registry(Args&&... args) {
  return std::make_shared<const LabelRegistry>(std::forward<Args>(args)...);
}

// A canonical product of generators. Degree 0 is the unit.
class Monomial {
 public:
  Monomial() = default;

  // Caller guarantees the ids are already sorted and valid.
  static Monomial from_sorted(std::vector<LabelId> ids) {
    Monomial m;
    m.ids_ = std::move(ids);
    return m;
  }

  std::size_t degree() const noexcept { return ids_.size(); }
  bool is_unit() const noexcept { return ids_.empty(); }
  std::span<const LabelId> ids() const noexcept { return ids_; }
  const std::vector<LabelId>& id_vector() const noexcept { return ids_; }

  // Graded-lexicographic: lower degree first, then by id sequence.
  std::strong_ordering operator<=>(const Monomial& other) const {
    if (auto c = ids_.size() <=> other.ids_.size(); c != 0) return c;
    return ids_ <=> other.ids_;
  }
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<LabelId> ids_;
};

inline Parity parity_of(const LabelRegistry& reg, const Monomial& m) {
  unsigned odd = 0;
  for (LabelId id : m.ids()) odd += reg.is_odd(id) ? 1u : 0u;
  return (odd & 1u) ? Parity::odd : Parity::even;
}

inline bool is_odd(const LabelRegistry& reg, const Monomial& m) {
  return parity_of(reg, m) == Parity::odd;
}

struct SignedMonomial {
  Monomial monomial;
  int sign = 1;  // +1, -1, or 0 when the product vanishes

  bool is_zero() const noexcept { return sign == 0; }
};

// Sorts a word of generators into canonical order and returns the Koszul sign.
inline SignedMonomial make_monomial(const LabelRegistry& reg, std::span<const LabelId> labels) {
  std::vector<LabelId> ids(labels.begin(), labels.end());
  for (LabelId id : ids) (void)reg.parity(id);
  int sign = 1;
  // Insertion sort; every swap of two odd generators flips the sign.
  for (std::size_t i = 1; i < ids.size(); ++i) {
    for (std::size_t j = i; j > 0 && ids[j - 1] > ids[j]; --j) {
      if (reg.is_odd(ids[j - 1]) && reg.is_odd(ids[j])) sign = -sign;
      std::swap(ids[j - 1], ids[j]);
    }
  }
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i] == ids[i - 1] && reg.is_odd(ids[i])) return {Monomial{}, 0};
  }
  return {Monomial::from_sorted(std::move(ids)), sign};
}

inline SignedMonomial make_monomial(const LabelRegistry& reg, std::initializer_list<LabelId> labels) {
  return make_monomial(reg, std::span<const LabelId>(labels.begin(), labels.size()));
}

// Product of two canonical monomials.
inline SignedMonomial multiply_monomials(const LabelRegistry& reg, const Monomial& a, const Monomial& b) {
  const auto lhs = a.ids();
  const auto rhs = b.ids();
  std::vector<LabelId> out;
  out.reserve(lhs.size() + rhs.size());
  int sign = 1;
  // Odd generators of lhs not yet emitted; each odd rhs generator emitted before
  // them has to cross all of them.
  std::size_t odd_left_remaining = 0;
  for (LabelId id : lhs) odd_left_remaining += reg.is_odd(id) ? 1 : 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < lhs.size() || j < rhs.size()) {
    if (j == rhs.size() || (i < lhs.size() && lhs[i] <= rhs[j])) {
      if (j < rhs.size() && lhs[i] == rhs[j] && reg.is_odd(lhs[i])) return {Monomial{}, 0};
      if (reg.is_odd(lhs[i])) --odd_left_remaining;
      out.push_back(lhs[i++]);
    } else {
      if (reg.is_odd(rhs[j]) && (odd_left_remaining & 1u)) sign = -sign;
      out.push_back(rhs[j++]);
    }
  }
  return {Monomial::from_sorted(std::move(out)), sign};
}

inline std::string format_monomial(const LabelRegistry& reg, const Monomial& m) {
  if (m.is_unit()) return "1";
  std::string out;
  for (LabelId id : m.ids()) {
    if (!out.empty()) out += '*';
    out += reg.name(id);
  }
  return out;
}

namespace detail {

inline void require_same_registry(const RegistryPtr& a, const RegistryPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw RegistryMismatch("operands use different label registries");
}

template <class S>
bool is_zero(const S& s) {
  return s == S(0);
}

template <class Key, class S>
void accumulate(std::map<Key, S>& terms, const Key& key, const S& value) {
  if (is_zero(value)) return;
  auto [it, inserted] = terms.try_emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (is_zero(it->second)) terms.erase(it);
  }
}

template <class Key, class S>
void accumulate(std::map<Key, S>& terms, Key&& key, const S& value) {
  if (is_zero(value)) return;
  auto [it, inserted] = terms.try_emplace(std::move(key), value);
  if (!inserted) {
    it->second += value;
    if (is_zero(it->second)) terms.erase(it);
  }
}

}  // namespace detail

// Finite linear combination of canonical monomials.
template <class S = Rational>
class AlgebraElement {
 public:
  using Scalar = S;
  using Terms = std::map<Monomial, S>;

  explicit AlgebraElement(RegistryPtr reg) : reg_(std::move(reg)) {}

  static AlgebraElement unit(RegistryPtr reg, const S& coefficient = S(1)) {
    AlgebraElement e(std::move(reg));
    e.add_term(Monomial{}, coefficient);
    return e;
  }

  static AlgebraElement generator(RegistryPtr reg, LabelId id) {
    (void)reg->parity(id);
    AlgebraElement e(std::move(reg));
    e.add_term(Monomial::from_sorted({id}), S(1));
    return e;
  }

  // The product of the given generators, in the given order.
  static AlgebraElement product(RegistryPtr reg, std::span<const LabelId> word, const S& coefficient = S(1)) {
    AlgebraElement e(reg);
    auto sm = make_monomial(*reg, word);
    if (!sm.is_zero()) e.add_term(sm.monomial, S(coefficient * S(sm.sign)));
    return e;
  }
  static AlgebraElement product(RegistryPtr reg, std::initializer_list<LabelId> word, const S& coefficient = S(1)) {
    return product(std::move(reg), std::span<const LabelId>(word.begin(), word.size()), coefficient);
  }

  const RegistryPtr& registry() const noexcept { return reg_; }
  const Terms& terms() const& noexcept { return terms_; }
  Terms terms() && noexcept { return std::move(terms_); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  S coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(const Monomial& m, const S& c) { detail::accumulate(terms_, m, c); }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    detail::require_same_registry(reg_, o.reg_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    detail::require_same_registry(reg_, o.reg_);
    for (const auto& [m, c] : o.terms_) add_term(m, S(-c));
    return *this;
  }
  AlgebraElement& operator*=(const S& s) {
    if (detail::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, const S& s) { return a *= s; }
  friend AlgebraElement operator*(const S& s, AlgebraElement a) { return a *= s; }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.terms_ == b.terms_ && (a.reg_ == b.reg_ || *a.reg_ == *b.reg_);
  }

 private:
  RegistryPtr reg_;
  Terms terms_;
};

template <class S>
AlgebraElement<S> multiply(const AlgebraElement<S>& a, const AlgebraElement<S>& b) {
  detail::require_same_registry(a.registry(), b.registry());
  const auto& reg = *a.registry();
  AlgebraElement<S> out(a.registry());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto p = multiply_monomials(reg, ma, mb);
      if (p.is_zero()) continue;
      out.add_term(p.monomial, S(ca * cb * S(p.sign)));
    }
  }
  return out;
}

template <class S>
AlgebraElement<S> operator*(const AlgebraElement<S>& a, const AlgebraElement<S>& b) {
  return multiply(a, b);
}

using TensorKey = std::vector<Monomial>;

// Finite linear combination of rank-k tensors of canonical monomials.
template <class S = Rational>
class TensorElement {
 public:
  using Scalar = S;
  using Terms = std::map<TensorKey, S>;

  TensorElement(RegistryPtr reg, std::size_t rank) : reg_(std::move(reg)), rank_(rank) {
    if (rank_ == 0) throw RankMismatch("tensor rank must be at least 1");
  }

  // 1 (x) 1 (x) ... (x) 1
  static TensorElement unit(RegistryPtr reg, std::size_t rank, const S& coefficient = S(1)) {
    TensorElement t(std::move(reg), rank);
    t.add_term(TensorKey(rank), coefficient);
    return t;
  }

  // The rank-1 tensor corresponding to an algebra element.
  static TensorElement from_element(const AlgebraElement<S>& a) {
    TensorElement t(a.registry(), 1);
    for (const auto& [m, c] : a.terms()) t.add_term(TensorKey{m}, c);
    return t;
  }

  const RegistryPtr& registry() const noexcept { return reg_; }
  std::size_t rank() const noexcept { return rank_; }
  const Terms& terms() const& noexcept { return terms_; }
  Terms terms() && noexcept { return std::move(terms_); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  S coefficient(const TensorKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(const TensorKey& key, const S& c) {
    check_key(key);
    detail::accumulate(terms_, key, c);
  }
  void add_term(TensorKey&& key, const S& c) {
    check_key(key);
    detail::accumulate(terms_, std::move(key), c);
  }

  // Inverse of from_element; requires rank 1.
  AlgebraElement<S> to_element() const {
    if (rank_ != 1) throw RankMismatch("to_element needs a rank-1 tensor");
    AlgebraElement<S> a(reg_);
    for (const auto& [key, c] : terms_) a.add_term(key[0], c);
    return a;
  }

  TensorElement& operator+=(const TensorElement& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) detail::accumulate(terms_, k, c);
    return *this;
  }
  TensorElement& operator-=(const TensorElement& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) detail::accumulate(terms_, k, S(-c));
    return *this;
  }
  TensorElement& operator*=(const S& s) {
    if (detail::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(TensorElement a, const S& s) { return a *= s; }
  friend TensorElement operator*(const S& s, TensorElement a) { return a *= s; }

  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.rank_ == b.rank_ && a.terms_ == b.terms_ && (a.reg_ == b.reg_ || *a.reg_ == *b.reg_);
  }

 private:
  void check_key(const TensorKey& key) const {
    if (key.size() != rank_) throw RankMismatch("tensor key has wrong number of slots");
  }
  void check_compatible(const TensorElement& o) const {
    detail::require_same_registry(reg_, o.reg_);
    if (rank_ != o.rank_) throw RankMismatch("tensor ranks differ");
  }

  RegistryPtr reg_;
  std::size_t rank_;
  Terms terms_;
};

// Sign (-1)^{sum_{i>j} |a_i||b_j|} picked up when the factors of b are moved
// past the later factors of a.
inline int tensor_crossing_sign(const LabelRegistry& reg, const TensorKey& a, const TensorKey& b) {
  int sign = 1;
  bool odd_b_prefix = false;  // parity of b_0 ... b_{i-1}
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0 && odd_b_prefix && is_odd(reg, a[i])) sign = -sign;
    if (is_odd(reg, b[i])) odd_b_prefix = !odd_b_prefix;
  }
  return sign;
}

// Slotwise product with graded tensor-product signs.
template <class S>
TensorElement<S> tensor_multiply(const TensorElement<S>& a, const TensorElement<S>& b) {
  detail::require_same_registry(a.registry(), b.registry());
  if (a.rank() != b.rank()) throw RankMismatch("tensor_multiply: ranks differ");
  const auto& reg = *a.registry();
  TensorElement<S> out(a.registry(), a.rank());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      int sign = tensor_crossing_sign(reg, ka, kb);
      TensorKey key(a.rank());
      for (std::size_t i = 0; i < a.rank() && sign != 0; ++i) {
        auto p = multiply_monomials(reg, ka[i], kb[i]);
        sign *= p.sign;
        key[i] = std::move(p.monomial);
      }
      if (sign == 0) continue;
      out.add_term(std::move(key), S(ca * cb * S(sign)));
    }
  }
  return out;
}

// a (x) b as a tensor of rank a.rank() + b.rank(); no reordering takes place.
template <class S>
TensorElement<S> tensor_concat(const TensorElement<S>& a, const TensorElement<S>& b) {
  detail::require_same_registry(a.registry(), b.registry());
  TensorElement<S> out(a.registry(), a.rank() + b.rank());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      TensorKey key = ka;
      key.insert(key.end(), kb.begin(), kb.end());
      out.add_term(std::move(key), S(ca * cb));
    }
  }
  return out;
}

template <class S>
std::ostream& print(std::ostream& os, const AlgebraElement<S>& a) {
  if (a.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")*" << format_monomial(*a.registry(), m);
  }
  return os;
}

template <class S>
std::ostream& print(std::ostream& os, const TensorElement<S>& t) {
  if (t.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [key, c] : t.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")*";
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) os << " (x) ";
      os << format_monomial(*t.registry(), key[i]);
    }
  }
  return os;
}

}  // namespace npoint

#endif  // NPOINT_FIELD_ALGEBRA_HPP_
