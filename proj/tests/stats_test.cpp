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
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "ghzsim/random.hpp"
#include "ghzsim/uvs.hpp"

namespace ghzsim::stats {
namespace {

std::vector<std::vector<Sign>> fair_coin_samples(std::uint64_t seed, std::size_t count,
                                                 std::size_t players) {
  RandomStream s(seed);
  std::vector<std::vector<Sign>> out(count);
  for (auto& v : out) {
    for (std::size_t i = 0; i < players; ++i) v.push_back(s.sign());
  }
  return out;
}

TEST(ParityEstimator, AllPlus) {
  const std::vector<std::vector<Sign>> samples(100, std::vector<Sign>(3, Sign::plus()));
  const std::vector<std::size_t> subset{0, 2};
  const auto r = parity_estimator(samples, subset);
  EXPECT_EQ(r.mean, 1.0);
  EXPECT_EQ(r.std_error, 0.0);
  EXPECT_EQ(r.count, 100U);
}

TEST(ParityEstimator, FairCoinsAverageToZero) {
  const auto samples = fair_coin_samples(501, 1000000, 3);
  const std::vector<std::size_t> subset{1};
  const auto r = parity_estimator(samples, subset);
  EXPECT_NEAR(r.mean, 0.0, 5e-3);
  EXPECT_NEAR(r.std_error, 1e-3, 1e-5);
}

TEST(ParityEstimator, MatchesDirectComputation) {
  const auto samples = fair_coin_samples(502, 999, 4);
  const std::vector<std::size_t> subset{0, 1, 3};
  double sum = 0.0;
  double sq = 0.0;
  for (const auto& v : samples) {
    const double p = v[0].value() * v[1].value() * v[3].value();
    sum += p;
    sq += p * p;
  }
  const double n = static_cast<double>(samples.size());
  const double mean = sum / n;
  const double sd = std::sqrt((sq - n * mean * mean) / (n - 1));
  const auto r = parity_estimator(samples, subset);
  EXPECT_NEAR(r.mean, mean, 1e-15);
  EXPECT_NEAR(r.std_error, sd / std::sqrt(n), 1e-12);
}

TEST(ParityEstimator, InvariantUnderReordering) {
  auto samples = fair_coin_samples(503, 5000, 3);
  const std::vector<std::size_t> subset{0, 1};
  const auto before = parity_estimator(samples, subset);
  std::shuffle(samples.begin(), samples.end(), std::mt19937_64(7));
  const auto after = parity_estimator(samples, subset);
  EXPECT_EQ(before.mean, after.mean);
  EXPECT_EQ(before.std_error, after.std_error);
}

TEST(ParityEstimator, RejectsBadInput) {
  const std::vector<std::vector<Sign>> none;
  const std::vector<std::size_t> subset{0};
  EXPECT_THROW((void)parity_estimator(none, subset), std::invalid_argument);
  const auto samples = fair_coin_samples(504, 10, 2);
  const std::vector<std::size_t> empty;
  EXPECT_THROW((void)parity_estimator(samples, empty), std::invalid_argument);
  const std::vector<std::size_t> outside{2};
  EXPECT_THROW((void)parity_estimator(samples, outside), std::invalid_argument);
}

TEST(SignEstimate, AgreesWithParityEstimator) {
  const auto samples = fair_coin_samples(505, 777, 1);
  std::uint64_t negatives = 0;
  for (const auto& v : samples) negatives += v[0].is_negative();
  const std::vector<std::size_t> subset{0};
  const auto a = sign_estimate(negatives, samples.size());
  const auto b = parity_estimator(samples, subset);
  EXPECT_NEAR(a.mean, b.mean, 1e-15);
  EXPECT_NEAR(a.std_error, b.std_error, 1e-15);
}

TEST(KolmogorovPValue, KnownQuantiles) {
  // Asymptotic critical values of sqrt(N)·D.
  const std::uint64_t n = 100000000;
  const double root = std::sqrt(static_cast<double>(n));
  EXPECT_NEAR(kolmogorov_pvalue(1.3581 / root, n), 0.05, 1e-3);
  EXPECT_NEAR(kolmogorov_pvalue(1.6276 / root, n), 0.01, 1e-3);
  EXPECT_NEAR(kolmogorov_pvalue(1.2238 / root, n), 0.10, 1e-3);
  EXPECT_EQ(kolmogorov_pvalue(0.0, n), 1.0);
  EXPECT_LT(kolmogorov_pvalue(1.0, n), 1e-12);
}

TEST(KsTest, StatisticByHand) {
  // Empirical steps at 0.1, 0.2, 0.9 against the uniform CDF: D = max(1/3-0.1, 2/3-0.2,
  // 0.9-2/3, 1-0.9) = 0.4667.
  const auto r = ks_uniform01({0.9, 0.1, 0.2});
  EXPECT_NEAR(r.statistic, 2.0 / 3.0 - 0.2, 1e-15);
  EXPECT_THROW((void)ks_uniform01({}), std::invalid_argument);
}

TEST(KsUniformArc, UniformDrawsPass) {
  RandomStream s(506);
  const Arc arc(wrap_angle(6.1), 0.4);
  std::vector<Angle> draws;
  for (int i = 0; i < 100000; ++i) {
    draws.push_back(wrap_angle(6.1 + s.uniform(-0.4, 0.4)));
  }
  EXPECT_GE(ks_uniform_arc(draws, arc).p_value, 1e-3);
}

TEST(KsUniformArc, DegenerateAtCenter) {
  const Arc arc(wrap_angle(1.0), 0.5);
  const std::vector<Angle> draws(10000, wrap_angle(1.0));
  const auto r = ks_uniform_arc(draws, arc);
  EXPECT_NEAR(r.statistic, 0.5, 1e-9);
  EXPECT_LT(r.p_value, 1e-12);
}

TEST(KsUniformArc, LeftHalfOnlyFails) {
  RandomStream s(507);
  const Arc arc(wrap_angle(0.1), 0.5);
  std::vector<Angle> draws;
  for (int i = 0; i < 10000; ++i) draws.push_back(wrap_angle(0.1 + s.uniform(-0.5, 0.0)));
  const auto r = ks_uniform_arc(draws, arc);
  EXPECT_GE(r.statistic, 0.5 - 1e-9);
  EXPECT_LT(r.p_value, 1e-6);
}

TEST(KsUniformArc, OutsideSampleIsMembershipError) {
  const Arc arc(wrap_angle(0.0), 0.5);
  const std::vector<Angle> draws{wrap_angle(0.1), wrap_angle(0.6)};
  EXPECT_THROW((void)ks_uniform_arc(draws, arc), ArcMembershipError);
}

TEST(KsUniformArc, PValuesCalibrated) {
  RandomStream s(508);
  const Arc arc(wrap_angle(3.0), 1.0);
  int small = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Angle> draws;
    for (int i = 0; i < 2000; ++i) draws.push_back(wrap_angle(3.0 + s.uniform(-1.0, 1.0)));
    small += ks_uniform_arc(draws, arc).p_value < 0.05;
  }
  const double fraction = small / 200.0;
  EXPECT_GE(fraction, 0.01);
  EXPECT_LE(fraction, 0.12);
}

TEST(CostSummary, Constant) {
  const std::vector<std::uint64_t> counts{6, 6, 6};
  const auto c = cost_summary(counts);
  EXPECT_EQ(c.mean, 6.0);
  EXPECT_EQ(c.max, 6U);
  EXPECT_EQ(c.std_error, 0.0);
  EXPECT_EQ(c.total, 18U);
  EXPECT_EQ(c.histogram.at(6), 3U);
  EXPECT_THROW((void)cost_summary(std::vector<std::uint64_t>{}), std::invalid_argument);
}

TEST(CostSummary, SinglePlayerRunsAreExactlyK) {
  for (std::uint64_t k = 1; k <= 5; ++k) {
    std::vector<std::uint64_t> counts;
    for (int r = 0; r < 1000; ++r) {
      const std::vector<Angle> angles{wrap_angle(0.1 * r)};
      counts.push_back(uvs::uvs_messages(angles, k, RandTree(r)).total_bits);
    }
    const auto c = cost_summary(counts);
    EXPECT_EQ(c.histogram.size(), 1U);
    EXPECT_EQ(c.histogram.begin()->first, k);
  }
}

TEST(CostSummary, IntegerTotalIsExact) {
  std::mt19937_64 gen(509);
  std::vector<std::uint64_t> counts;
  std::uint64_t expected = 0;
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t c = (std::uint64_t{1} << 40) + gen() % 1000;
    counts.push_back(c);
    expected += c;
  }
  const auto c = cost_summary(counts);
  EXPECT_EQ(c.total, expected);
  EXPECT_EQ(c.count, counts.size());
  EXPECT_NEAR(c.mean * static_cast<double>(c.count), static_cast<double>(expected),
              static_cast<double>(expected) * 1e-15);
}

TEST(CostAccumulator, MergeMatchesSinglePass) {
  std::mt19937_64 gen(510);
  CostAccumulator whole;
  CostAccumulator left;
  CostAccumulator right;
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t c = gen() % 50;
    whole.add(c);
    (i % 3 == 0 ? left : right).add(c);
  }
  left.merge(right);
  const auto a = whole.summary();
  const auto b = left.summary();
  EXPECT_EQ(a.total, b.total);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.histogram, b.histogram);
}

TEST(HemisphereCentroid, UniformHemispherePasses) {
  RandomStream s(511);
  const UnitVec3 d{1, 0, 0};
  std::vector<UnitVec3> draws;
  for (int i = 0; i < 1000000; ++i) {
    draws.push_back(hemisphere_point(wrap_angle(s.uniform(-kPi / 2, kPi / 2)), s.uniform(-1, 1)));
  }
  const auto c = hemisphere_centroid(draws, d);
  EXPECT_TRUE(c.pass);
  EXPECT_NEAR(c.tolerance, 5e-3, 1e-15);
}

TEST(HemisphereCentroid, SingleSampleFails) {
  const UnitVec3 d{1, 0, 0};
  const std::vector<UnitVec3> one{d};
  const auto c = hemisphere_centroid(one, d);
  EXPECT_NEAR(c.deviation[0], 0.5, 1e-15);
  EXPECT_EQ(c.deviation[1], 0.0);
  EXPECT_FALSE(c.pass);
}

TEST(HemisphereCentroid, FullSphereFails) {
  std::mt19937_64 gen(512);
  std::normal_distribution<double> normal;
  std::vector<UnitVec3> draws;
  for (int i = 0; i < 100000; ++i) {
    UnitVec3 v{normal(gen), normal(gen), normal(gen)};
    const double r = v.norm();
    draws.push_back({v.x / r, v.y / r, v.z / r});
  }
  const auto c = hemisphere_centroid(draws, UnitVec3{1, 0, 0});
  EXPECT_NEAR(c.deviation[0], 0.5, 0.02);
  EXPECT_FALSE(c.pass);
}

}  // namespace
}  // namespace ghzsim::stats
