// Copyright 2026 The ghzsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ghzsim/random.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "ghzsim/stats.hpp"

namespace ghzsim {
namespace {

TEST(RandomStream, SameKeySameSequence) {
  RandomStream a(99);
  RandomStream b(99);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a(), b());
  }
  RandomStream c(100);
  EXPECT_NE(RandomStream(99)(), c());
}

TEST(RandomStream, UniformRanges) {
  RandomStream s(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = s.uniform(-1.0, 1.0);
    ASSERT_GE(v, -1.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(RandomStream, GeometricHalfFrequencies) {
  constexpr int kSamples = 1000000;
  RandomStream s(2);
  std::uint64_t zeros = 0;
  std::uint64_t threes = 0;
  double mean = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const std::uint64_t g = s.geometric_half();
    zeros += g == 0;
    threes += g == 3;
    mean += static_cast<double>(g);
  }
  EXPECT_NEAR(static_cast<double>(zeros) / kSamples, 0.5, 0.002);
  EXPECT_NEAR(static_cast<double>(threes) / kSamples, 0.0625, 0.001);
  EXPECT_NEAR(mean / kSamples, 1.0, 0.005);
}

TEST(RandomStream, FairCoinBalanced) {
  constexpr int kSamples = 1000000;
  RandomStream s(3);
  std::int64_t sum = 0;
  for (int i = 0; i < kSamples; ++i) {
    sum += s.sign().value();
  }
  EXPECT_LE(std::abs(static_cast<double>(sum)) / kSamples, 5.0 / std::sqrt(kSamples));
}

TEST(DeriveKey, DistinctLabelsDistinctKeys) {
  std::set<std::uint64_t> keys;
  for (std::uint64_t parent = 0; parent < 50; ++parent) {
    for (std::uint64_t label = 0; label < 50; ++label) {
      keys.insert(derive_key(parent, label));
    }
  }
  EXPECT_EQ(keys.size(), 2500U);
}

TEST(RandTree, DeterministicPerPath) {
  const RandTree a(1234);
  const RandTree b(1234);
  for (std::size_t level = 2; level < 20; ++level) {
    EXPECT_EQ(a.node(level).j, b.node(level).j);
    EXPECT_EQ(a.node(level).b, b.node(level).b);
  }
  for (std::size_t p = 0; p < 20; ++p) {
    EXPECT_EQ(a.leaf_offset(p), b.leaf_offset(p));
  }
  // Access order does not matter.
  const Angle late = a.leaf_offset(7);
  (void)a.node(3);
  EXPECT_EQ(a.leaf_offset(7), late);
}

TEST(RandTree, RejectsLevelBelowTwo) {
  const RandTree t(1);
  EXPECT_THROW((void)t.node(1), std::invalid_argument);
}

TEST(RandTree, NodeCoinsHaveTheRightLaws) {
  constexpr int kTrees = 200000;
  std::uint64_t j_zero = 0;
  std::int64_t b_sum = 0;
  double cross = 0.0;
  for (int t = 0; t < kTrees; ++t) {
    const RandTree tree(derive_key(77, t));
    const NodeCoins c2 = tree.node(2);
    const NodeCoins c3 = tree.node(3);
    j_zero += c2.j == 0;
    b_sum += c2.b.value();
    // Geometric(1/2) has mean 1 and variance 2.
    cross += (static_cast<double>(c2.j) - 1.0) * (static_cast<double>(c3.j) - 1.0);
  }
  const double tol = 5.0 / std::sqrt(kTrees);
  EXPECT_NEAR(static_cast<double>(j_zero) / kTrees, 0.5, tol);
  EXPECT_NEAR(static_cast<double>(b_sum) / kTrees, 0.0, tol);
  EXPECT_NEAR(cross / kTrees / 2.0, 0.0, tol);
}

TEST(RandTree, LeafOffsetsUniformOnCircle) {
  std::vector<Angle> offsets;
  for (int t = 0; t < 100000; ++t) {
    offsets.push_back(RandTree(derive_key(5, t)).leaf_offset(t % 7));
  }
  EXPECT_GE(stats::ks_uniform_arc(offsets, Arc(wrap_angle(kPi), kPi)).p_value, 1e-3);
}

}  // namespace
}  // namespace ghzsim
