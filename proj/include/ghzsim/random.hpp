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

/**
 * @file random.hpp
 * Keyed random streams and the path-addressed public randomness shared by
 * the players and the referee.
 *
 * Every stream is identified by a 64-bit key. Keys for sub-streams are
 * derived from a parent key and a label, so any party holding the root
 * seed reconstructs exactly the same values for the same path.
 */
#pragma once

#include <cstdint>
#include <limits>

#include "ghzsim/geometry.hpp"

namespace ghzsim {

/// Mixes a parent key with a label into an independent child key.
[[nodiscard]] std::uint64_t derive_key(std::uint64_t parent, std::uint64_t label) noexcept;

/// SplitMix64 generator; satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) noexcept : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept;
  /// Uniform on [lo, hi].
  double uniform(double lo, double hi) noexcept;
  bool fair_coin() noexcept;
  Sign sign() noexcept;
  /// Number of tails before the first head in fair coin flips; uncapped.
  std::uint64_t geometric_half() noexcept;
  Angle uniform_angle() noexcept;

 private:
  std::uint64_t state_;
  std::uint64_t coin_bits_ = 0;
  int coin_left_ = 0;
};

/// Public coins held at an internal node of the sampling recursion.
struct NodeCoins {
  std::uint64_t j = 0;
  Sign b = Sign::plus();
};

/**
 * Path-addressed public randomness for one run of the vector sampling
 * protocol. Internal node at level m (m >= 2) carries a geometric index and
 * a sign; the leaf of each player carries a uniform offset on the circle.
 * Values depend only on (key, path), never on the order of access.
 */
class RandTree {
 public:
  explicit RandTree(std::uint64_t key) noexcept : key_(key) {}

  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }
  /// Coins at recursion level `level` (the node that combines players
  /// 1..level-1 with player `level`, 1-based); requires level >= 2.
  [[nodiscard]] NodeCoins node(std::size_t level) const;
  /// Leaf offset of the player with 0-based index `player`.
  [[nodiscard]] Angle leaf_offset(std::size_t player) const;

 private:
  std::uint64_t key_;
};

}  // namespace ghzsim
