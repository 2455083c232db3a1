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

#include "npoint/oracle.hpp"
#include "test_support.hpp"

namespace npoint {
namespace {

using testing::Q;

TEST(OracleTrees, FreeTreeCounts) {
  const std::size_t counts[] = {0, 1, 1, 1, 2, 3, 6, 11, 23};
  for (std::size_t k = 1; k <= 8; ++k) EXPECT_EQ(oracle::enumerate_trees<Q>(k, {}).size(), counts[k]) << k;
}

TEST(OracleTrees, Caps) {
  EXPECT_THROW(oracle::enumerate_trees<Q>(9, {}), OracleCap);
  const std::vector<LabelId> legs(9, 0);
  EXPECT_THROW(oracle::enumerate_trees<Q>(2, legs), OracleCap);
  EXPECT_THROW(oracle::enumerate_trees<Q>(0, {}), Error);
}

TEST(OracleTrees, ExternalLegs) {
  const std::vector<LabelId> four{0, 1, 2, 3};
  EXPECT_EQ(oracle::enumerate_trees<Q>(2, four, 3).size(), 3u);
  EXPECT_EQ(oracle::enumerate_trees<Q>(1, four).size(), 1u);
  // Two vertices and two distinct legs: both on one vertex, or one each.
  EXPECT_EQ(oracle::enumerate_trees<Q>(2, std::vector<LabelId>{0, 1}).size(), 2u);
  EXPECT_EQ(oracle::enumerate_trees<Q>(2, std::vector<LabelId>{0, 0}).size(), 2u);
  // Leg placements on the 3-path: ends are swapped by the automorphism.
  EXPECT_EQ(oracle::enumerate_trees<Q>(3, std::vector<LabelId>{0}).size(), 2u);
  EXPECT_EQ(oracle::enumerate_trees<Q>(3, std::vector<LabelId>{0, 1}).size(), 5u);
}

TEST(SymmetryFactor, Examples) {
  TreeGraph<Q> path;
  path.legs.assign(4, Monomial{});
  path.edges = {{0, 1}, {1, 2}, {2, 3}};
  EXPECT_EQ(oracle::symmetry_factor(path), 2u);

  TreeGraph<Q> star;
  star.legs.assign(5, Monomial{});
  star.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  EXPECT_EQ(oracle::symmetry_factor(star), 24u);

  // Decorations break symmetry.
  star.legs[1] = Monomial::from_sorted({0});
  EXPECT_EQ(oracle::symmetry_factor(star), 6u);
  star.legs[2] = Monomial::from_sorted({0});
  EXPECT_EQ(oracle::symmetry_factor(star), 4u);
}

TEST(SlotWordSign, Examples) {
  auto reg = testing::registry(1, 2);
  EXPECT_EQ(oracle::slot_word_sign(*reg, {{0, 2}, {0, 1}}), -1);
  EXPECT_EQ(oracle::slot_word_sign(*reg, {{1, 1}, {0, 2}}), -1);
  EXPECT_EQ(oracle::slot_word_sign(*reg, {{1, 1}, {0, 0}}), 1);
  EXPECT_EQ(oracle::slot_word_sign(*reg, {{0, 1}, {0, 1}}), 0);
  EXPECT_EQ(oracle::slot_word_sign(*reg, {{0, 1}, {1, 1}}), 1);
  EXPECT_EQ(oracle::slot_word_sign(*reg, {{0, 0}, {0, 0}}), 1);
}

TEST(PartitionSum, BellNumbers) {
  auto reg = testing::registry(6);
  Functional<Q> ones(reg);
  for (std::size_t d = 1; d <= 6; ++d) {
    for (const auto& m : monomials_of_degree(*reg, d)) ones.set(m, Q(1));
  }
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (std::size_t n = 0; n <= 6; ++n) {
    std::vector<LabelId> word(n);
    for (std::size_t i = 0; i < n; ++i) word[i] = static_cast<LabelId>(i);
    EXPECT_EQ(oracle::partition_sum(ones, word), Q(static_cast<long>(bell[n])));
  }
}

TEST(PartitionSum, FermionPairs) {
  // sigma only on pairs: the sum over perfect matchings with signs, i.e. a
  // Pfaffian. For f1 f2 f3 f4: a12 a34 - a13 a24 + a14 a23.
  auto reg = testing::registry(0, 4);
  Functional<Q> sigma(reg);
  Q a[4][4];
  long v = 2;
  for (LabelId i = 0; i < 4; ++i) {
    for (LabelId j = i + 1; j < 4; ++j) {
      a[i][j] = Q(v++);
      sigma.set(Monomial::from_sorted({i, j}), a[i][j]);
    }
  }
  const std::vector<LabelId> word{0, 1, 2, 3};
  EXPECT_EQ(oracle::partition_sum(sigma, word), a[0][1] * a[2][3] - a[0][2] * a[1][3] + a[0][3] * a[1][2]);
}

TEST(TreeSum, ChainAndPhiCubed) {
  auto reg = testing::registry(1);
  Functional<Q> t2(reg);
  t2.set(Monomial::from_sorted({0, 0}), Q(5));
  const std::vector<std::vector<Q>> inv{{Q(1, 7)}};
  const std::vector<LabelId> xx{0, 0};
  EXPECT_EQ(oracle::tree_sum(t2, inv, xx, 1), Q(5));
  EXPECT_EQ(oracle::tree_sum(t2, inv, xx, 3), Q(125, 49));

  Functional<Q> g(reg);
  g.set(Monomial::from_sorted({0, 0, 0}), Q(2));
  const std::vector<LabelId> x4{0, 0, 0, 0};
  EXPECT_EQ(oracle::tree_sum(g, {{Q(1, 3)}}, x4, 2), Q(4));
}

}  // namespace
}  // namespace npoint
