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

#include "ghzsim/oracle.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace ghzsim::oracle {
namespace {

using Complex = std::complex<double>;

double angle_sum(std::span<const Angle> angles) {
  double s = 0.0;
  for (const Angle a : angles) {
    s += a.radians();
  }
  return s;
}

void require_players(std::span<const Angle> angles, std::size_t limit) {
  if (angles.empty() || angles.size() > limit) {
    throw std::invalid_argument("oracle supports 1.." + std::to_string(limit) + " players, got " +
                                std::to_string(angles.size()));
  }
}

}  // namespace

double OutcomeDistribution::total() const {
  return std::accumulate(probability.begin(), probability.end(), 0.0);
}

double OutcomeDistribution::correlator(std::uint64_t subset_mask) const {
  double c = 0.0;
  for (std::uint64_t o = 0; o < probability.size(); ++o) {
    const bool odd = (std::popcount(o & subset_mask) & 1) != 0;
    c += odd ? -probability[o] : probability[o];
  }
  return c;
}

std::string outcome_label(std::uint64_t index, std::size_t players) {
  std::string s(players, '+');
  for (std::size_t i = 0; i < players; ++i) {
    if ((index >> i) & 1U) {
      s[i] = '-';
    }
  }
  return s;
}

double exact_correlation(std::span<const Angle> angles) {
  if (angles.empty()) {
    throw std::invalid_argument("correlation needs at least one angle");
  }
  return std::cos(angle_sum(angles));
}

OutcomeDistribution exact_distribution(std::span<const Angle> angles) {
  require_players(angles, 20);
  const std::size_t n = angles.size();
  const double c = std::cos(angle_sum(angles));
  const double scale = std::ldexp(1.0, -static_cast<int>(n));
  OutcomeDistribution dist{n, std::vector<double>(std::size_t{1} << n)};
  for (std::uint64_t o = 0; o < dist.probability.size(); ++o) {
    const double parity = (std::popcount(o) & 1) != 0 ? -1.0 : 1.0;
    dist.probability[o] = scale * (1.0 + parity * c);
  }
  return dist;
}

OutcomeDistribution born_rule_distribution(std::span<const Angle> angles) {
  require_players(angles, 12);
  const std::size_t n = angles.size();
  const std::size_t dim = std::size_t{1} << n;

  // Basis index bit q holds the computational value of qubit q.
  std::vector<Complex> state(dim, Complex{});
  state[0] = state[dim - 1] = Complex{1.0 / std::sqrt(2.0), 0.0};

  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t q = 0; q < n; ++q) {
    // Rows are <e_+| and <e_-| for e_± = (|0> ± e^{iα}|1>)/sqrt(2).
    const Complex phase = std::polar(1.0, -angles[q].radians());
    const Complex m00{r, 0.0};
    const Complex m01 = r * phase;
    const Complex m10{r, 0.0};
    const Complex m11 = -r * phase;
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t idx = 0; idx < dim; ++idx) {
      if (idx & bit) {
        continue;
      }
      const Complex a0 = state[idx];
      const Complex a1 = state[idx | bit];
      state[idx] = m00 * a0 + m01 * a1;        // outcome +1
      state[idx | bit] = m10 * a0 + m11 * a1;  // outcome -1
    }
  }

  OutcomeDistribution dist{n, std::vector<double>(dim)};
  for (std::size_t idx = 0; idx < dim; ++idx) {
    dist.probability[idx] = std::norm(state[idx]);
  }
  return dist;
}

void write_distribution_csv(std::ostream& out, const OutcomeDistribution& dist) {
  out << "outcome,probability\n";
  for (std::uint64_t o = 0; o < dist.probability.size(); ++o) {
    out << fmt::format("{},{:.12g}\n", outcome_label(o, dist.players), dist.probability[o]);
  }
}

}  // namespace ghzsim::oracle
