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
 * @file lemma1.hpp
 * Mixture of paired uniforms whose halved sum is uniform on [0, 1].
 *
 * Draw i >= 0 with probability 2^-(i+1) and a sign r. Two independent
 * values are then taken uniformly on [0, 2^-i] (r = -1) or on
 * [1 - 2^-i, 1] (r = +1). Their average is uniform on [0, 1]. The vector
 * sampling recursion uses exactly this construction to turn two narrow
 * uniform angles into one wider uniform angle.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>

#include "ghzsim/geometry.hpp"
#include "ghzsim/random.hpp"

namespace ghzsim::lemma1 {

struct MixtureIndex {
  std::uint64_t i = 0;
  Sign r = Sign::minus();
};

[[nodiscard]] MixtureIndex sample_mixture_index(RandomStream& stream);

/// Independent pair, each uniform on the component interval of `idx`.
[[nodiscard]] std::pair<double, double> sample_component_pair(const MixtureIndex& idx,
                                                              RandomStream& stream);

/// (t1 + t2) / 2 for a fresh index and pair.
[[nodiscard]] double lemma1_sample(RandomStream& stream);

/**
 * Density of the halved pair sum for component (i, r). For r = -1 it is the
 * triangle 2^(2(i+1)) x on [0, 2^-(i+1)] and 2^(i+2) - 2^(2(i+1)) x on
 * [2^-(i+1), 2^-i]; r = +1 mirrors it about 1/2.
 * Throws std::invalid_argument for x outside [0, 1].
 */
[[nodiscard]] double component_density(std::uint64_t i, Sign r, double x);

/// Mixture weighted by 2^-(i+1) and averaged over r, truncated at i_max.
[[nodiscard]] double mixture_density(double x, std::uint64_t i_max);

/// CSV (x, density, i_max) on `points` equally spaced x in [0, 1].
void write_density_csv(std::ostream& out, std::uint64_t i_max, int points);

}  // namespace ghzsim::lemma1
