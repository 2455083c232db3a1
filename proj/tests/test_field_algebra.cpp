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

#include <gtest/gtest.h>

#include <random>

#include "npoint/field_algebra.hpp"
#include "npoint/oracle.hpp"
#include "test_support.hpp"

namespace npoint {
namespace {

using testing::mono;
using testing::Q;

TEST(MakeMonomial, BosonsCommute) {
  auto reg = testing::registry(2);
  auto sm = make_monomial(*reg, {1, 0});
  EXPECT_EQ(sm.sign, 1);
  EXPECT_EQ(sm.monomial, Monomial::from_sorted({0, 1}));
}

TEST(MakeMonomial, FermionsAnticommute) {
  auto reg = testing::registry(0, 2);
  auto sm = make_monomial(*reg, {1, 0});
  EXPECT_EQ(sm.sign, -1);
  EXPECT_EQ(sm.monomial, Monomial::from_sorted({0, 1}));
}

TEST(MakeMonomial, OddSquareVanishes) {
  auto reg = testing::registry(0, 1);
  EXPECT_TRUE(make_monomial(*reg, {0, 0}).is_zero());
}

TEST(MakeMonomial, UnknownGenerator) {
  auto reg = testing::registry(1);
  EXPECT_THROW(make_monomial(*reg, {0, 3}), UnknownGenerator);
  EXPECT_THROW((void)reg->id("nope"), UnknownGenerator);
}

TEST(MakeMonomial, MixedWordSign) {
  // b1 f1 f2: the word f2 b1 f1 needs one odd exchange.
  auto reg = testing::registry(1, 2);
  auto sm = make_monomial(*reg, {2, 0, 1});
  EXPECT_EQ(sm.sign, -1);
  EXPECT_EQ(sm.monomial, Monomial::from_sorted({0, 1, 2}));
}

TEST(MakeMonomial, CanonicalIsIdempotent) {
  auto reg = testing::registry(2, 2);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = testing::random_element(rng, reg, 6, 1);
    for (const auto& [m, c] : a.terms()) {
      auto again = make_monomial(*reg, m.ids());
      EXPECT_EQ(again.sign, 1);
      EXPECT_EQ(again.monomial, m);
    }
  }
}

TEST(Multiply, UnitAndBosons) {
  auto reg = testing::registry(2);
  auto one = AlgebraElement<Q>::unit(reg);
  auto x = AlgebraElement<Q>::generator(reg, 0);
  auto y = AlgebraElement<Q>::generator(reg, 1);
  EXPECT_EQ(one * x, x);
  EXPECT_EQ(x * one, x);
  auto xy = x * y;
  EXPECT_EQ(xy.size(), 1u);
  EXPECT_EQ(xy.coefficient(mono(reg, {0, 1})), Q(1));
}

TEST(Multiply, FermionSquareIsZero) {
  auto reg = testing::registry(0, 1);
  auto f = AlgebraElement<Q>::generator(reg, 0);
  EXPECT_TRUE((f * f).is_zero());
}

TEST(Multiply, RegistryMismatch) {
  auto a = AlgebraElement<Q>::generator(testing::registry(1), 0);
  auto b = AlgebraElement<Q>::generator(testing::registry(0, 1), 0);
  EXPECT_THROW(multiply(a, b), RegistryMismatch);
}

TEST(Multiply, NoZeroCoefficientsStored) {
  auto reg = testing::registry(2);
  auto x = AlgebraElement<Q>::generator(reg, 0);
  auto diff = x - x;
  EXPECT_TRUE(diff.is_zero());
  EXPECT_TRUE((x * Q(0)).is_zero());
}

TEST(Multiply, AssociativeAndGradedCommutative) {
  std::mt19937 rng(7);
  auto reg = testing::registry(2, 3);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = testing::random_element(rng, reg, 3, 3);
    auto b = testing::random_element(rng, reg, 3, 3);
    auto c = testing::random_element(rng, reg, 3, 3);
    EXPECT_EQ((a * b) * c, a * (b * c));

    const Parity pa = trial % 2 ? Parity::odd : Parity::even;
    const Parity pb = trial % 3 ? Parity::odd : Parity::even;
    auto ha = testing::random_homogeneous(rng, reg, 4, 3, pa);
    auto hb = testing::random_homogeneous(rng, reg, 4, 3, pb);
    const Q sign = (pa == Parity::odd && pb == Parity::odd) ? Q(-1) : Q(1);
    EXPECT_EQ(ha * hb, (hb * ha) * sign);
    for (const auto& [m, v] : (ha * hb).terms()) EXPECT_NE(v, 0);
  }
}

TEST(TensorMultiply, UnitAndPlacement) {
  auto reg = testing::registry(2);
  TensorElement<Q> unit = TensorElement<Q>::unit(reg, 2);
  TensorElement<Q> xy(reg, 2);
  xy.add_term({mono(reg, {0}), mono(reg, {1})}, Q(1));
  EXPECT_EQ(tensor_multiply(unit, xy), xy);

  TensorElement<Q> x1(reg, 2);
  x1.add_term({mono(reg, {0}), Monomial{}}, Q(1));
  TensorElement<Q> y2(reg, 2);
  y2.add_term({Monomial{}, mono(reg, {1})}, Q(1));
  EXPECT_EQ(tensor_multiply(x1, y2), xy);
}

TEST(TensorMultiply, OddCrossingSign) {
  auto reg = testing::registry(0, 2);
  TensorElement<Q> a(reg, 2);
  a.add_term({Monomial{}, mono(reg, {0})}, Q(1));  // 1 (x) f1
  TensorElement<Q> b(reg, 2);
  b.add_term({mono(reg, {1}), Monomial{}}, Q(1));  // f2 (x) 1
  auto p = tensor_multiply(a, b);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.coefficient({mono(reg, {1}), mono(reg, {0})}), Q(-1));
}

TEST(TensorMultiply, RankMismatch) {
  auto reg = testing::registry(1);
  EXPECT_THROW(tensor_multiply(TensorElement<Q>::unit(reg, 2), TensorElement<Q>::unit(reg, 3)), RankMismatch);
  TensorElement<Q> t(reg, 2);
  EXPECT_THROW(t.add_term(TensorKey(3), Q(1)), RankMismatch);
}

// Brute force: concatenate both words as (slot, label) pairs and sort.
TEST(TensorMultiply, MatchesSlotWordOrdering) {
  std::mt19937 rng(3);
  auto reg = testing::registry(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rank = 1 + trial % 3;
    TensorKey ka(rank);
    TensorKey kb(rank);
    for (std::size_t s = 0; s < rank; ++s) {
      ka[s] = testing::random_monomial(rng, reg, 2);
      kb[s] = testing::random_monomial(rng, reg, 2);
    }
    TensorElement<Q> a(reg, rank);
    a.add_term(ka, Q(1));
    TensorElement<Q> b(reg, rank);
    b.add_term(kb, Q(1));

    std::vector<std::pair<std::size_t, LabelId>> word;
    for (const auto* key : {&ka, &kb}) {
      for (std::size_t s = 0; s < rank; ++s) {
        for (LabelId id : (*key)[s].ids()) word.emplace_back(s, id);
      }
    }
    const int sign = oracle::slot_word_sign(*reg, word);
    auto product = tensor_multiply(a, b);
    if (sign == 0) {
      EXPECT_TRUE(product.is_zero());
      continue;
    }
    std::sort(word.begin(), word.end());
    TensorKey expected(rank);
    std::vector<std::vector<LabelId>> slots(rank);
    for (const auto& [s, id] : word) slots[s].push_back(id);
    for (std::size_t s = 0; s < rank; ++s) expected[s] = Monomial::from_sorted(slots[s]);
    ASSERT_EQ(product.size(), 1u);
    EXPECT_EQ(product.coefficient(expected), Q(sign));
  }
}

TEST(LabelRegistry, DuplicateNamesRejected) {
  LabelRegistry reg;
  reg.add("x");
  EXPECT_THROW(reg.add("x"), Error);
  EXPECT_EQ(reg.id("x"), 0);
}

}  // namespace
}  // namespace npoint
