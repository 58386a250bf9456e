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

#include "ghzsim/lemma1.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ghzsim/stats.hpp"

namespace ghzsim::lemma1 {
namespace {

// CDF of the average of two independent uniforms on [0, w] (r = -1) or on
// [1 - w, 1] (r = +1), with w = 2^-i.
double component_cdf(std::uint64_t i, Sign r, double x) {
  const double w = std::ldexp(1.0, -static_cast<int>(i));
  auto tri = [](double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return s <= 0.5 ? 2.0 * s * s : 1.0 - 2.0 * (1.0 - s) * (1.0 - s);
  };
  return r.is_negative() ? tri(x / w) : 1.0 - tri((1.0 - x) / w);
}

// Composite Simpson's rule.
double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int p = 1; p < panels; ++p) {
    sum += f(a + p * h) * (p % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

TEST(MixtureIndex, Frequencies) {
  constexpr int kSamples = 1000000;
  RandomStream s(101);
  std::uint64_t zero = 0;
  std::uint64_t three = 0;
  std::int64_t sign_sum = 0;
  double mean = 0.0;
  for (int k = 0; k < kSamples; ++k) {
    const MixtureIndex idx = sample_mixture_index(s);
    zero += idx.i == 0;
    three += idx.i == 3;
    mean += static_cast<double>(idx.i);
    sign_sum += idx.r.value();
  }
  EXPECT_NEAR(static_cast<double>(zero) / kSamples, 0.5, 0.002);
  EXPECT_NEAR(static_cast<double>(three) / kSamples, 0.0625, 0.001);
  EXPECT_NEAR(mean / kSamples, 1.0, 0.005);
  EXPECT_NEAR(static_cast<double>(sign_sum) / kSamples, 0.0, 0.005);
}

TEST(ComponentPair, Ranges) {
  RandomStream s(102);
  for (int k = 0; k < 10000; ++k) {
    auto [a, b] = sample_component_pair({0, Sign::minus()}, s);
    ASSERT_GE(std::min(a, b), 0.0);
    ASSERT_LE(std::max(a, b), 1.0);
    std::tie(a, b) = sample_component_pair({2, Sign::minus()}, s);
    ASSERT_GE(std::min(a, b), 0.0);
    ASSERT_LE(std::max(a, b), 0.25);
    std::tie(a, b) = sample_component_pair({2, Sign::plus()}, s);
    ASSERT_GE(std::min(a, b), 0.75);
    ASSERT_LE(std::max(a, b), 1.0);
  }
}

TEST(Lemma1Sample, UniformOnUnitInterval) {
  constexpr int kSamples = 1000000;
  RandomStream s(103);
  std::vector<double> draws(kSamples);
  double mean = 0.0;
  for (double& x : draws) {
    x = lemma1_sample(s);
    ASSERT_GE(x, 0.0);
    ASSERT_LE(x, 1.0);
    mean += x;
  }
  EXPECT_NEAR(mean / kSamples, 0.5, 0.001);
  EXPECT_GE(stats::ks_uniform01(draws).p_value, 1e-3);
}

TEST(Lemma1Sample, HistogramIsFlat) {
  constexpr int kSamples = 10000000;
  constexpr int kBins = 1000;
  RandomStream s(104);
  std::vector<std::uint64_t> counts(kBins, 0);
  for (int k = 0; k < kSamples; ++k) {
    const double x = lemma1_sample(s);
    ++counts[std::min(kBins - 1, static_cast<int>(x * kBins))];
  }
  double worst = 0.0;
  for (const auto c : counts) {
    const double density = static_cast<double>(c) * kBins / kSamples;
    worst = std::max(worst, std::fabs(density - 1.0));
  }
  EXPECT_LE(worst, 0.05);
}

TEST(Lemma1Sample, ConditionalLawMatchesTriangle) {
  constexpr int kSamples = 100000;
  RandomStream s(105);
  for (std::uint64_t i = 0; i <= 3; ++i) {
    for (const Sign r : {Sign::minus(), Sign::plus()}) {
      std::vector<double> sums(kSamples);
      for (double& v : sums) {
        const auto [a, b] = sample_component_pair({i, r}, s);
        v = (a + b) / 2.0;
      }
      const auto ks = stats::ks_test(sums, [&](double x) { return component_cdf(i, r, x); });
      EXPECT_GE(ks.p_value, 1e-3) << "i=" << i << " r=" << r.value();
    }
  }
}

TEST(ComponentDensity, Examples) {
  EXPECT_DOUBLE_EQ(component_density(1, Sign::minus(), 0.125), 2.0);
  EXPECT_DOUBLE_EQ(component_density(0, Sign::minus(), 0.25), 1.0);
  EXPECT_NEAR(component_density(2, Sign::plus(), 0.9), 6.4, 1e-12);
  EXPECT_EQ(component_density(2, Sign::minus(), 0.5), 0.0);
}

TEST(ComponentDensity, RejectsOutsideUnitInterval) {
  EXPECT_THROW((void)component_density(0, Sign::plus(), -0.01), std::invalid_argument);
  EXPECT_THROW((void)component_density(0, Sign::plus(), 1.01), std::invalid_argument);
}

TEST(ComponentDensity, IsDerivativeOfClosedFormCdf) {
  RandomStream s(106);
  for (int k = 0; k < 2000; ++k) {
    const std::uint64_t i = k % 8;
    const Sign r = s.sign();
    const double x = s.uniform(1e-3, 1.0 - 1e-3);
    const double h = 1e-7;
    const double numeric = (component_cdf(i, r, x + h) - component_cdf(i, r, x - h)) / (2 * h);
    const double scale = std::ldexp(1.0, static_cast<int>(i) + 1);
    // Skip points within h of a kink.
    const double w = std::ldexp(1.0, -static_cast<int>(i));
    const double y = r.is_negative() ? x : 1.0 - x;
    if (std::fabs(y - w) < 2 * h || std::fabs(y - w / 2) < 2 * h) continue;
    ASSERT_NEAR(component_density(i, r, x), numeric, 1e-5 * scale * scale) << i << " " << x;
  }
}

TEST(ComponentDensity, IntegratesToOne) {
  for (std::uint64_t i = 0; i <= 20; ++i) {
    for (const Sign r : {Sign::minus(), Sign::plus()}) {
      const double w = std::ldexp(1.0, -static_cast<int>(i));
      // Split at the kinks so each piece is linear.
      const std::vector<double> cuts = r.is_negative()
                                           ? std::vector<double>{0.0, w / 2, w, 1.0}
                                           : std::vector<double>{0.0, 1.0 - w, 1.0 - w / 2, 1.0};
      double total = 0.0;
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        if (cuts[c + 1] <= cuts[c]) continue;
        total += simpson([&](double x) { return component_density(i, r, x); }, cuts[c],
                         cuts[c + 1], 64);
      }
      EXPECT_NEAR(total, 1.0, 1e-9) << "i=" << i;
    }
  }
}

TEST(MixtureDensity, Examples) {
  EXPECT_DOUBLE_EQ(mixture_density(0.5, 0), 1.0);
  EXPECT_NEAR(mixture_density(0.3, 10), 1.0, 1e-12);
  EXPECT_NEAR(mixture_density(0.75, 40), 1.0, 1e-12);
}

TEST(MixtureDensity, FlatAwayFromTruncatedEdges) {
  RandomStream s(107);
  for (std::uint64_t i_max : {2u, 5u, 12u, 40u}) {
    const double edge = std::ldexp(1.0, -static_cast<int>(i_max));
    for (int k = 0; k < 5000; ++k) {
      const double x = s.uniform(edge, 1.0 - edge);
      ASSERT_NEAR(mixture_density(x, i_max), 1.0, 1e-12) << i_max << " " << x;
    }
  }
}

TEST(MixtureDensity, TruncationLosesMassNearEdges) {
  EXPECT_LT(mixture_density(1e-6, 5), 0.5);
  EXPECT_LT(mixture_density(1.0 - 1e-6, 5), 0.5);
}

TEST(DensityCsv, HeaderAndRows) {
  std::ostringstream out;
  write_density_csv(out, 40, 5);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,density,i_max");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
  EXPECT_NE(out.str().find("0.5,1,40"), std::string::npos);
  std::ostringstream bad;
  EXPECT_THROW(write_density_csv(bad, 3, 1), std::invalid_argument);
}

}  // namespace
}  // namespace ghzsim::lemma1
