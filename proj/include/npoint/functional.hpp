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

// Linear forms on S(V) and their convolution algebra.

#ifndef NPOINT_FUNCTIONAL_HPP_
#define NPOINT_FUNCTIONAL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "npoint/coalgebra.hpp"
#include "npoint/errors.hpp"
#include "npoint/field_algebra.hpp"

namespace npoint {

// Every canonical monomial of the given degree, in increasing order.
inline std::vector<Monomial> monomials_of_degree(const LabelRegistry& reg, std::size_t degree) {
  std::vector<Monomial> out;
  std::vector<LabelId> current;
  auto recurse = [&](auto&& self, LabelId from) -> void {
    if (current.size() == degree) {
      out.push_back(Monomial::from_sorted(current));
      return;
    }
    for (std::size_t id = from; id < reg.size(); ++id) {
      const auto lid = static_cast<LabelId>(id);
      if (!current.empty() && current.back() == lid && reg.is_odd(lid)) continue;
      current.push_back(lid);
      self(self, lid);
      current.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

// Canonical monomials of degree 0..max_degree in graded-lexicographic order.
inline std::vector<Monomial> monomials_up_to(const LabelRegistry& reg, std::size_t max_degree) {
  std::vector<Monomial> out;
  for (std::size_t d = 0; d <= max_degree; ++d) {
    auto level = monomials_of_degree(reg, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// A linear form on S(V): a value on the unit plus a sparse kernel table for
// positive degrees. Absent kernel entries read as zero. Kernels live on even
// monomials only; a functional never pairs with an odd number of fermions.
template <class S = Rational>
class Functional {
 public:
  using Scalar = S;

  explicit Functional(RegistryPtr reg, S unit_value = S(0), std::optional<std::size_t> max_degree = std::nullopt)
      : reg_(std::move(reg)), unit_value_(std::move(unit_value)), max_degree_(max_degree) {}

  // The counit: 1 on the unit, 0 elsewhere. Neutral element of convolution.
  static Functional counit(RegistryPtr reg) { return Functional(std::move(reg), S(1)); }

  const RegistryPtr& registry() const noexcept { return reg_; }
  const S& unit_value() const noexcept { return unit_value_; }
  const std::map<Monomial, S>& kernels() const& noexcept { return kernels_; }
  std::map<Monomial, S> kernels() && noexcept { return std::move(kernels_); }
  std::optional<std::size_t> max_degree() const noexcept { return max_degree_; }

  void set_unit_value(S v) { unit_value_ = std::move(v); }
  void set_max_degree(std::optional<std::size_t> d) { max_degree_ = d; }

  // Sets the kernel on a canonical monomial, replacing any previous value.
  void set(const Monomial& m, const S& value) {
    if (m.is_unit()) {
      unit_value_ = value;
      return;
    }
    for (LabelId id : m.ids()) (void)reg_->parity(id);
    if (is_odd(*reg_, m) && !detail::is_zero(value)) {
      throw Error("functional kernel on odd monomial " + format_monomial(*reg_, m));
    }
    if (detail::is_zero(value)) {
      kernels_.erase(m);
    } else {
      kernels_[m] = value;
    }
  }

  // Sets the value on a product of generators given in arbitrary order.
  void set_word(std::span<const LabelId> word, const S& value) {
    auto sm = make_monomial(*reg_, word);
    if (sm.is_zero()) throw Error("cannot assign a value to a vanishing product");
    set(sm.monomial, S(value * S(sm.sign)));
  }

  S value(const Monomial& m) const {
    if (max_degree_ && m.degree() > *max_degree_) {
      throw InsufficientKernelData("functional tabulated only up to degree " + std::to_string(*max_degree_) +
                                   ", asked for degree " + std::to_string(m.degree()));
    }
    if (m.is_unit()) return unit_value_;
    auto it = kernels_.find(m);
    return it == kernels_.end() ? S(0) : it->second;
  }

  // Largest degree carrying a non-zero kernel (0 if none).
  std::size_t support_degree() const {
    std::size_t d = 0;
    for (const auto& [m, v] : kernels_) d = std::max(d, m.degree());
    return d;
  }

  bool vanishes_at_degree(std::size_t degree) const {
    if (degree == 0) return detail::is_zero(unit_value_);
    for (const auto& [m, v] : kernels_) {
      if (m.degree() == degree) return false;
    }
    return true;
  }

  Functional& operator+=(const Functional& o) {
    detail::require_same_registry(reg_, o.reg_);
    unit_value_ += o.unit_value_;
    for (const auto& [m, v] : o.kernels_) detail::accumulate(kernels_, m, v);
    max_degree_ = min_cap(max_degree_, o.max_degree_);
    return *this;
  }
  Functional& operator-=(const Functional& o) {
    detail::require_same_registry(reg_, o.reg_);
    unit_value_ -= o.unit_value_;
    for (const auto& [m, v] : o.kernels_) detail::accumulate(kernels_, m, S(-v));
    max_degree_ = min_cap(max_degree_, o.max_degree_);
    return *this;
  }
  Functional& operator*=(const S& s) {
    unit_value_ *= s;
    if (detail::is_zero(s)) {
      kernels_.clear();
    } else {
      for (auto& [m, v] : kernels_) v *= s;
    }
    return *this;
  }
  friend Functional operator+(Functional a, const Functional& b) { return a += b; }
  friend Functional operator-(Functional a, const Functional& b) { return a -= b; }
  friend Functional operator*(Functional a, const S& s) { return a *= s; }
  friend Functional operator*(const S& s, Functional a) { return a *= s; }

  // Table equality; the degree cap is not compared.
  friend bool operator==(const Functional& a, const Functional& b) {
    return a.unit_value_ == b.unit_value_ && a.kernels_ == b.kernels_;
  }

  // The same functional with all kernels above `degree` removed.
  Functional truncated(std::size_t degree) const {
    Functional out(reg_, unit_value_, degree);
    for (const auto& [m, v] : kernels_) {
      if (m.degree() <= degree) out.kernels_.emplace(m, v);
    }
    return out;
  }

 private:
  static std::optional<std::size_t> min_cap(std::optional<std::size_t> a, std::optional<std::size_t> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
  }

  RegistryPtr reg_;
  S unit_value_;
  std::map<Monomial, S> kernels_;
  std::optional<std::size_t> max_degree_;
};

template <class S>
S evaluate(const Functional<S>& f, const AlgebraElement<S>& a) {
  detail::require_same_registry(f.registry(), a.registry());
  S total(0);
  for (const auto& [m, c] : a.terms()) total += c * f.value(m);
  return total;
}

// (f_1 (x) ... (x) f_k) applied to a rank-k tensor. Functionals are even, so
// no Koszul signs arise.
template <class S>
S evaluate_tensor(std::span<const Functional<S>* const> fs, const TensorElement<S>& t) {
  if (fs.size() != t.rank()) throw RankMismatch("evaluate_tensor: functional count differs from rank");
  S total(0);
  for (const auto& [key, c] : t.terms()) {
    S prod(c);
    for (std::size_t i = 0; i < key.size() && !detail::is_zero(prod); ++i) prod *= fs[i]->value(key[i]);
    total += prod;
  }
  return total;
}

// f^{(x)k} applied to a rank-k tensor.
template <class S>
S evaluate_power(const Functional<S>& f, const TensorElement<S>& t) {
  std::vector<const Functional<S>*> fs(t.rank(), &f);
  return evaluate_tensor<S>(fs, t);
}

// alpha * beta = (alpha (x) beta) o Delta, tabulated on every monomial of
// degree <= degree_bound.
template <class S>
Functional<S> convolve(const Functional<S>& alpha, const Functional<S>& beta, std::size_t degree_bound) {
  detail::require_same_registry(alpha.registry(), beta.registry());
  const auto& reg = *alpha.registry();
  Functional<S> out(alpha.registry(), S(alpha.unit_value() * beta.unit_value()), degree_bound);
  for (std::size_t d = 1; d <= degree_bound; ++d) {
    for (const Monomial& m : monomials_of_degree(reg, d)) {
      if (is_odd(reg, m)) continue;
      S v(0);
      for (const auto& split : split_monomial(reg, m)) {
        const S l = alpha.value(split.left);
        if (detail::is_zero(l)) continue;
        v += S(split.coefficient) * l * beta.value(split.right);
      }
      out.set(m, v);
    }
  }
  return out;
}

// exp_*(sigma) = sum_k sigma^{*k}/k!, exact up to degree_bound because
// sigma(1) = 0 kills all powers beyond the argument degree.
template <class S>
Functional<S> star_exp(const Functional<S>& sigma, std::size_t degree_bound) {
  if (!detail::is_zero(sigma.unit_value())) {
    throw NonTerminatingSeries("star_exp requires sigma(1) = 0");
  }
  Functional<S> result = Functional<S>::counit(sigma.registry());
  result.set_max_degree(degree_bound);
  Functional<S> power = result;
  S factorial(1);
  for (std::size_t k = 1; k <= degree_bound; ++k) {
    power = convolve(power, sigma, degree_bound);
    factorial *= S(static_cast<long>(k));
    result += power * S(S(1) / factorial);
  }
  return result;
}

// log_*(rho) = sum_{k>=1} (-1)^{k+1} (rho - eps)^{*k} / k.
template <class S>
Functional<S> star_log(const Functional<S>& rho, std::size_t degree_bound) {
  if (rho.unit_value() != S(1)) throw NonTerminatingSeries("star_log requires rho(1) = 1");
  Functional<S> delta = rho - Functional<S>::counit(rho.registry());
  Functional<S> result(rho.registry(), S(0), degree_bound);
  Functional<S> power = Functional<S>::counit(rho.registry());
  power.set_max_degree(degree_bound);
  for (std::size_t k = 1; k <= degree_bound; ++k) {
    power = convolve(power, delta, degree_bound);
    S coef = S(1) / S(static_cast<long>(k));
    if (k % 2 == 0) coef = -coef;
    result += power * coef;
  }
  return result;
}

}  // namespace npoint

#endif  // NPOINT_FUNCTIONAL_HPP_
