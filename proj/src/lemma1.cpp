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

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace ghzsim::lemma1 {

MixtureIndex sample_mixture_index(RandomStream& stream) {
  MixtureIndex idx;
  idx.i = stream.geometric_half();
  idx.r = stream.sign();
  return idx;
}

std::pair<double, double> sample_component_pair(const MixtureIndex& idx, RandomStream& stream) {
  // Widths below 2^-1074 underflow to zero; the draw then sits on the
  // interval end point.
  const double width = std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(idx.i, 2000)));
  const double lo = idx.r.is_negative() ? 0.0 : 1.0 - width;
  const double t1 = lo + width * stream.uniform01();
  const double t2 = lo + width * stream.uniform01();
  return {t1, t2};
}

double lemma1_sample(RandomStream& stream) {
  const MixtureIndex idx = sample_mixture_index(stream);
  const auto [t1, t2] = sample_component_pair(idx, stream);
  return 0.5 * (t1 + t2);
}

double component_density(std::uint64_t i, Sign r, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("density argument must lie in [0, 1]");
  }
  if (!r.is_negative()) {
    return component_density(i, Sign::minus(), 1.0 - x);
  }
  const int e = static_cast<int>(std::min<std::uint64_t>(i, 2000));
  if (x > std::ldexp(1.0, -e)) {
    return 0.0;
  }
  // y = 2^(i+1) x in [0, 2] keeps the large slope from overflowing early.
  const double y = std::ldexp(x, e + 1);
  return y <= 1.0 ? std::ldexp(y, e + 1) : std::ldexp(2.0 - y, e + 1);
}

double mixture_density(double x, std::uint64_t i_max) {
  double total = 0.0;
  for (std::uint64_t i = 0; i <= i_max; ++i) {
    const double weight = std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(i + 1, 2000)));
    if (weight == 0.0) {
      break;
    }
    total += weight * 0.5 *
             (component_density(i, Sign::minus(), x) + component_density(i, Sign::plus(), x));
  }
  return total;
}

void write_density_csv(std::ostream& out, std::uint64_t i_max, int points) {
  if (points < 2) {
    throw std::invalid_argument("density dump needs at least two points");
  }
  out << "x,density,i_max\n";
  for (int p = 0; p < points; ++p) {
    const double x = static_cast<double>(p) / (points - 1);
    out << fmt::format("{:.12g},{:.12g},{}\n", x, mixture_density(x, i_max), i_max);
  }
}

}  // namespace ghzsim::lemma1
