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
 * @file ghz.hpp
 * Classical simulation of equatorial measurements on the n-party GHZ state.
 *
 * Players 1..n-1 output their shared sign bits. Player n acts as referee
 * for two vector-sampling runs over the other players' angles, lifts the
 * two sampled longitudes to uniform points on the hemisphere about the
 * partial angle sum, and outputs the product of the shared bits times
 * sgn<λ1 + λ2, a_n>. The product of all outputs then has mean cos(Σα)
 * while every proper subset product has mean zero.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ghzsim/geometry.hpp"
#include "ghzsim/random.hpp"
#include "ghzsim/stats.hpp"

namespace ghzsim::ghz {

struct MeasurementSetting {
  std::vector<Angle> angles;

  /// Throws std::invalid_argument for fewer than two players.
  void validate() const;
  [[nodiscard]] std::size_t players() const noexcept { return angles.size(); }
};

struct GhzSharedRandomness {
  RandTree first_run{0};
  RandTree second_run{0};
  std::vector<Sign> bits;  // b_1 .. b_{n-1}
  double u1 = 0.0;         // private to player n
  double u2 = 0.0;
};

using OutcomeVector = std::vector<Sign>;

struct RunRecord {
  OutcomeVector outcomes;
  std::uint64_t bits_used = 0;
};

/// Everything a single replica needs, derived from (seed, replica).
[[nodiscard]] GhzSharedRandomness make_shared_randomness(std::uint64_t seed, std::uint64_t replica,
                                                         std::size_t players);

[[nodiscard]] Sign toner_bacon_sign(const UnitVec3& l1, const UnitVec3& l2, const UnitVec3& a);

/// Detailed view of one run, exposing the intermediate vectors for checks.
struct RunTrace {
  RunRecord record;
  Angle theta1;
  Angle theta2;
  UnitVec3 lambda1;
  UnitVec3 lambda2;
  std::uint64_t first_run_bits = 0;
  std::uint64_t second_run_bits = 0;
};

[[nodiscard]] RunTrace simulate_traced(const MeasurementSetting& setting,
                                       const GhzSharedRandomness& shared);
[[nodiscard]] RunRecord simulate_once(const MeasurementSetting& setting,
                                      const GhzSharedRandomness& shared);

/// Product of the outputs of the players in `subset` (0-based indices).
[[nodiscard]] Sign subset_product(const OutcomeVector& outcomes,
                                  const std::vector<std::size_t>& subset);

/// All proper nonempty subsets of {0, ..., n-1}, ordered by bitmask.
[[nodiscard]] std::vector<std::vector<std::size_t>> proper_subsets(std::size_t n);

struct EstimateOptions {
  std::vector<std::vector<std::size_t>> subsets;
  unsigned workers = 1;
};

struct Estimate {
  stats::EstimatorResult full;
  std::vector<stats::EstimatorResult> subset_correlators;  // parallel to options.subsets
  stats::CostSummary bits;
};

/**
 * N independent runs, replica r using make_shared_randomness(seed, r).
 * Partial results are integer counts, so the outcome does not depend on
 * the number of workers. Throws std::invalid_argument for N = 0.
 */
[[nodiscard]] Estimate estimate_run(const MeasurementSetting& setting, std::uint64_t samples,
                                    std::uint64_t seed, const EstimateOptions& options = {});

/// JSON record {n, angles, seed, N, correlator, stderr, subset_correlators,
/// mean_bits, max_bits}.
[[nodiscard]] std::string run_export_json(const MeasurementSetting& setting, std::uint64_t seed,
                                          std::uint64_t samples, const Estimate& estimate,
                                          const EstimateOptions& options);

}  // namespace ghzsim::ghz
