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
 * @file stats.hpp
 * Estimators and goodness-of-fit tests used to check the simulation
 * against its exact targets.
 */
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ghzsim/geometry.hpp"

namespace ghzsim::stats {

struct EstimatorResult {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(N)
  std::uint64_t count = 0;
};

/// Mean and standard error of ±1 values given how many were negative.
[[nodiscard]] EstimatorResult sign_estimate(std::uint64_t negatives, std::uint64_t count);

/// Mean of prod_{i in subset} o_i over `samples`. Throws on empty input,
/// an empty subset, or an index out of range.
[[nodiscard]] EstimatorResult parity_estimator(std::span<const std::vector<Sign>> samples,
                                               std::span<const std::size_t> subset);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov tail probability for statistic d on n samples.
[[nodiscard]] double kolmogorov_pvalue(double d, std::uint64_t n);

/// One-sample KS test against a continuous reference CDF.
[[nodiscard]] KsResult ks_test(std::vector<double> samples,
                               const std::function<double(double)>& reference_cdf);

[[nodiscard]] KsResult ks_uniform01(std::vector<double> samples);

class ArcMembershipError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/**
 * KS test of angles against the uniform law on `arc`. Each sample is
 * mapped to [0, 1] by its wrap-aware offset from the arc start. Throws
 * ArcMembershipError if any sample lies outside the arc.
 */
[[nodiscard]] KsResult ks_uniform_arc(std::span<const Angle> samples, const Arc& arc);

struct CostSummary {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t max = 0;
  std::uint64_t total = 0;
  std::uint64_t count = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;  // bit count -> runs
};

/// Integer accumulation of bit counts; merges are exact.
class CostAccumulator {
 public:
  void add(std::uint64_t bits);
  void merge(const CostAccumulator& other);
  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }
  [[nodiscard]] CostSummary summary() const;

 private:
  std::uint64_t count_ = 0;
  std::uint64_t total_ = 0;
  boost::multiprecision::uint128_t total_sq_ = 0;
  std::uint64_t max_ = 0;
  std::map<std::uint64_t, std::uint64_t> histogram_;
};

/// Throws std::invalid_argument on empty input.
[[nodiscard]] CostSummary cost_summary(std::span<const std::uint64_t> bit_counts);

struct CentroidCheck {
  std::array<double, 3> deviation{};  // |mean - d/2| per coordinate
  double tolerance = 0.0;             // 5 / sqrt(N)
  bool pass = false;                  // also false for fewer than 100 samples
};

[[nodiscard]] CentroidCheck hemisphere_centroid(std::span<const UnitVec3> samples,
                                                const UnitVec3& d);

}  // namespace ghzsim::stats
