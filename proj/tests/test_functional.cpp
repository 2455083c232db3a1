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

#include "npoint/functional.hpp"
#include "npoint/oracle.hpp"
#include "test_support.hpp"

namespace npoint {
namespace {

using testing::mono;
using testing::Q;

using F = Functional<Q>;
using Element = AlgebraElement<Q>;

TEST(Evaluate, Examples) {
  auto reg = testing::registry(2);
  F sigma(reg);
  sigma.set(mono(reg, {0, 1}), Q(5));
  EXPECT_EQ(evaluate(sigma, Element::product(reg, {0, 1}, Q(2))), Q(10));

  F rho(reg, Q(1));
  EXPECT_EQ(evaluate(rho, Element::unit(reg)), Q(1));
  EXPECT_EQ(evaluate(sigma, Element::generator(reg, 0)), Q(0));
}

TEST(Evaluate, DegreeCap) {
  auto reg = testing::registry(1);
  F f(reg, Q(0), 2);
  EXPECT_NO_THROW(evaluate(f, Element::product(reg, {0, 0})));
  EXPECT_THROW(evaluate(f, Element::product(reg, {0, 0, 0})), InsufficientKernelData);
}

TEST(Functional, OddKernelRejected) {
  auto reg = testing::registry(1, 2);
  F f(reg);
  EXPECT_THROW(f.set(mono(reg, {1}), Q(1)), Error);
  EXPECT_THROW(f.set(mono(reg, {0, 2}), Q(1)), Error);
  EXPECT_NO_THROW(f.set(mono(reg, {1, 2}), Q(1)));
  EXPECT_NO_THROW(f.set(mono(reg, {1}), Q(0)));
}

TEST(Functional, SetWordAppliesSign) {
  auto reg = testing::registry(0, 2);
  F f(reg);
  const std::vector<LabelId> word{1, 0};
  f.set_word(word, Q(3));
  EXPECT_EQ(f.value(mono(reg, {0, 1})), Q(-3));
}

TEST(Convolve, CounitIsNeutral) {
  std::mt19937 rng(1);
  auto reg = testing::registry(2, 2);
  const F eps = F::counit(reg);
  for (int trial = 0; trial < 20; ++trial) {
    const F alpha = testing::random_functional(rng, reg, 1, 5, 0.7, testing::random_rational(rng));
    EXPECT_EQ(convolve(eps, alpha, 5), alpha);
    EXPECT_EQ(convolve(alpha, eps, 5), alpha);
  }
}

TEST(Convolve, DegreeOne) {
  std::mt19937 rng(2);
  auto reg = testing::registry(2);
  const F alpha = testing::random_functional(rng, reg, 1, 2, 1.0, Q(2));
  const F beta = testing::random_functional(rng, reg, 1, 2, 1.0, Q(-3));
  const Monomial x = mono(reg, {0});
  const Q expected = alpha.value(x) * beta.unit_value() + alpha.unit_value() * beta.value(x);
  EXPECT_EQ(convolve(alpha, beta, 2).value(x), expected);
}

TEST(Convolve, VanishingOnePointSquare) {
  std::mt19937 rng(3);
  auto reg = testing::registry(2);
  const F sigma = testing::random_functional(rng, reg, 2, 4, 1.0);
  EXPECT_EQ(convolve(sigma, sigma, 4).value(mono(reg, {0, 1})), Q(0));
}

TEST(Convolve, Associative) {
  std::mt19937 rng(4);
  auto reg = testing::registry(1, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const F a = testing::random_functional(rng, reg, 1, 4, 0.8, testing::random_rational(rng));
    const F b = testing::random_functional(rng, reg, 1, 4, 0.8, testing::random_rational(rng));
    const F c = testing::random_functional(rng, reg, 1, 4, 0.8, testing::random_rational(rng));
    EXPECT_EQ(convolve(convolve(a, b, 4), c, 4), convolve(a, convolve(b, c, 4), 4));
  }
}

TEST(StarExp, ZeroGivesCounit) {
  auto reg = testing::registry(2);
  EXPECT_EQ(star_exp(F(reg), 4), F::counit(reg));
}

TEST(StarExp, FourPointDecomposition) {
  std::mt19937 rng(6);
  auto reg = testing::registry(4);
  const F sigma = testing::random_functional(rng, reg, 2, 4, 1.0);
  const F rho = star_exp(sigma, 4);
  auto s = [&](std::initializer_list<LabelId> ids) { return sigma.value(mono(reg, ids)); };
  const Q expected = s({0, 1, 2, 3}) + s({0, 1}) * s({2, 3}) + s({0, 2}) * s({1, 3}) + s({0, 3}) * s({1, 2});
  EXPECT_EQ(rho.value(mono(reg, {0, 1, 2, 3})), expected);
}

TEST(StarExp, MatchesPartitionOracle) {
  std::mt19937 rng(7);
  auto reg = testing::registry(2, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const F sigma = testing::random_functional(rng, reg, 1, 5, 0.8);
    const F rho = star_exp(sigma, 5);
    for (std::size_t d = 1; d <= 5; ++d) {
      for (const auto& m : monomials_of_degree(*reg, d)) {
        if (is_odd(*reg, m)) continue;
        EXPECT_EQ(rho.value(m), oracle::partition_sum(sigma, m.ids()));
      }
    }
  }
}

TEST(StarExp, RequiresVanishingUnit) {
  auto reg = testing::registry(1);
  EXPECT_THROW(star_exp(F(reg, Q(1)), 3), NonTerminatingSeries);
}

TEST(StarLog, CounitGivesZero) {
  auto reg = testing::registry(2);
  EXPECT_EQ(star_log(F::counit(reg), 4), F(reg));
  EXPECT_THROW(star_log(F(reg, Q(2)), 3), NonTerminatingSeries);
}

TEST(StarLog, GaussianRho) {
  std::mt19937 rng(8);
  auto reg = testing::registry(4);
  F rho = testing::random_functional(rng, reg, 2, 2, 1.0, Q(1));
  const F sigma = star_log(rho, 4);
  for (const auto& m : monomials_of_degree(*reg, 2)) EXPECT_EQ(sigma.value(m), rho.value(m));
  for (const auto& m : monomials_of_degree(*reg, 3)) EXPECT_EQ(sigma.value(m), Q(0));
  // Degree four: minus the sum over pairings of the word's positions.
  for (const auto& m : monomials_of_degree(*reg, 4)) {
    const auto ids = m.ids();
    auto g = [&](std::size_t i, std::size_t j) { return rho.value(mono(reg, {ids[i], ids[j]})); };
    const Q pairings = g(0, 1) * g(2, 3) + g(0, 2) * g(1, 3) + g(0, 3) * g(1, 2);
    EXPECT_EQ(sigma.value(m), Q(-pairings));
  }
}

TEST(StarLog, Roundtrip) {
  std::mt19937 rng(10);
  auto reg = testing::registry(1, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const F sigma = testing::random_functional(rng, reg, 1, 5, 0.8);
    EXPECT_EQ(star_log(star_exp(sigma, 5), 5), sigma.truncated(5));
    const F rho = testing::random_functional(rng, reg, 1, 5, 0.8, Q(1));
    EXPECT_EQ(star_exp(star_log(rho, 5), 5), rho.truncated(5));
  }
}

}  // namespace
}  // namespace npoint
