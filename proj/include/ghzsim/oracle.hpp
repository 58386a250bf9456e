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
 * @file oracle.hpp
 * Exact outcome statistics for equatorial measurements on the GHZ state.
 *
 * Outcome strings are indexed by an integer whose bit i is set when
 * player i (0-based) reads -1.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ghzsim/geometry.hpp"

namespace ghzsim::oracle {

struct OutcomeDistribution {
  std::size_t players = 0;
  std::vector<double> probability;  // size 2^players

  [[nodiscard]] double total() const;
  /// Σ_o (prod_{i in subset} o_i) p(o); `subset_mask` selects players.
  [[nodiscard]] double correlator(std::uint64_t subset_mask) const;
};

/// "+-+" style label for an outcome index.
[[nodiscard]] std::string outcome_label(std::uint64_t index, std::size_t players);

[[nodiscard]] double exact_correlation(std::span<const Angle> angles);

/// p(o) = 2^-n (1 + (prod o_i) cos Σα). Supports n <= 20.
[[nodiscard]] OutcomeDistribution exact_distribution(std::span<const Angle> angles);

/**
 * Born-rule probabilities from the state vector: prepares
 * (|0...0> + |1...1>)/sqrt(2), rotates each qubit into the eigenbasis of
 * cos(α)X + sin(α)Y, and squares the amplitudes. Supports n <= 12.
 */
[[nodiscard]] OutcomeDistribution born_rule_distribution(std::span<const Angle> angles);

/// CSV (outcome, probability), one row per outcome string.
void write_distribution_csv(std::ostream& out, const OutcomeDistribution& dist);

}  // namespace ghzsim::oracle
