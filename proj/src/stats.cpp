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

#include "ghzsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ghzsim::stats {

EstimatorResult sign_estimate(std::uint64_t negatives, std::uint64_t count) {
  if (count == 0) {
    throw std::invalid_argument("estimator needs at least one sample");
  }
  const auto n = static_cast<double>(count);
  const double mean = (n - 2.0 * static_cast<double>(negatives)) / n;
  double std_error = 0.0;
  if (count > 1) {
    const double variance = std::max(0.0, (1.0 - mean * mean) * n / (n - 1.0));
    std_error = std::sqrt(variance / n);
  }
  return {mean, std_error, count};
}

EstimatorResult parity_estimator(std::span<const std::vector<Sign>> samples,
                                 std::span<const std::size_t> subset) {
  if (samples.empty()) {
    throw std::invalid_argument("parity estimator needs samples");
  }
  if (subset.empty()) {
    throw std::invalid_argument("parity estimator needs a nonempty subset");
  }
  std::uint64_t negatives = 0;
  for (const auto& outcome : samples) {
    bool negative = false;
    for (const std::size_t i : subset) {
      if (i >= outcome.size()) {
        throw std::invalid_argument("subset index " + std::to_string(i) + " out of range");
      }
      negative ^= outcome[i].is_negative();
    }
    negatives += negative ? 1 : 0;
  }
  return sign_estimate(negatives, samples.size());
}

double kolmogorov_pvalue(double d, std::uint64_t n) {
  if (n == 0) {
    return 1.0;
  }
  const double root = std::sqrt(static_cast<double>(n));
  const double lambda = (root + 0.12 + 0.11 / root) * d;
  if (lambda < 1e-3) {
    return 1.0;
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    sum += sign * std::exp(-2.0 * j * j * lambda * lambda);
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples,
                 const std::function<double(double)>& reference_cdf) {
  if (samples.empty()) {
    throw std::invalid_argument("KS test needs samples");
  }
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = reference_cdf(samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, kolmogorov_pvalue(d, samples.size())};
}

KsResult ks_uniform01(std::vector<double> samples) {
  return ks_test(std::move(samples), [](double x) { return std::clamp(x, 0.0, 1.0); });
}

KsResult ks_uniform_arc(std::span<const Angle> samples, const Arc& arc) {
  std::vector<double> unit;
  unit.reserve(samples.size());
  const double width = 2.0 * arc.half_width();
  for (const Angle a : samples) {
    if (!arc_contains(arc, a)) {
      throw ArcMembershipError("angle " + std::to_string(a.radians()) + " lies outside the arc");
    }
    // Offset from the center is in [-half_width, half_width]; this stays
    // wrap-aware even for a half-width of π.
    unit.push_back((angular_offset(arc.center(), a) + arc.half_width()) / width);
  }
  return ks_uniform01(std::move(unit));
}

void CostAccumulator::add(std::uint64_t bits) {
  ++count_;
  total_ += bits;
  total_sq_ += boost::multiprecision::uint128_t(bits) * bits;
  max_ = std::max(max_, bits);
  ++histogram_[bits];
}

void CostAccumulator::merge(const CostAccumulator& other) {
  count_ += other.count_;
  total_ += other.total_;
  total_sq_ += other.total_sq_;
  max_ = std::max(max_, other.max_);
  for (const auto& [bits, runs] : other.histogram_) {
    histogram_[bits] += runs;
  }
}

CostSummary CostAccumulator::summary() const {
  if (count_ == 0) {
    throw std::invalid_argument("cost summary needs at least one run");
  }
  CostSummary s;
  s.count = count_;
  s.total = total_;
  s.max = max_;
  s.histogram = histogram_;
  const auto n = static_cast<double>(count_);
  s.mean = static_cast<double>(total_) / n;
  if (count_ > 1) {
    // N·Σx² - (Σx)² is computed exactly before the single division.
    const boost::multiprecision::uint128_t sum = total_;
    const boost::multiprecision::uint128_t spread = total_sq_ * count_ - sum * sum;
    const double variance = spread.convert_to<double>() / (n * (n - 1.0));
    s.std_error = std::sqrt(variance / n);
  }
  return s;
}

CostSummary cost_summary(std::span<const std::uint64_t> bit_counts) {
  CostAccumulator acc;
  for (const std::uint64_t b : bit_counts) {
    acc.add(b);
  }
  return acc.summary();
}

namespace {
constexpr std::size_t kMinCentroidSamples = 100;
}  // namespace

CentroidCheck hemisphere_centroid(std::span<const UnitVec3> samples, const UnitVec3& d) {
  CentroidCheck check;
  if (samples.empty()) {
    return check;
  }
  std::array<double, 3> sum{};
  for (const UnitVec3& v : samples) {
    sum[0] += v.x;
    sum[1] += v.y;
    sum[2] += v.z;
  }
  const auto n = static_cast<double>(samples.size());
  const std::array<double, 3> target{d.x / 2.0, d.y / 2.0, d.z / 2.0};
  check.tolerance = 5.0 / std::sqrt(n);
  // Below this size the 5/sqrt(N) band is wider than the offset being
  // tested, so the check cannot tell a hemisphere from a point mass.
  check.pass = samples.size() >= kMinCentroidSamples;
  for (int c = 0; c < 3; ++c) {
    check.deviation[c] = std::fabs(sum[c] / n - target[c]);
    check.pass = check.pass && check.deviation[c] <= check.tolerance;
  }
  return check;
}

}  // namespace ghzsim::stats
