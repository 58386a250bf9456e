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

#include "ghzsim/ghz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ghzsim/parallel.hpp"
#include "ghzsim/uvs.hpp"
#include "json.hpp"

namespace ghzsim::ghz {
namespace {

enum StreamLabel : std::uint64_t {
  kFirstRun = 1,
  kSecondRun = 2,
  kSharedBits = 3,
  kPrivate = 4,
};

struct Partial {
  std::uint64_t full_negatives = 0;
  std::vector<std::uint64_t> subset_negatives;
  stats::CostAccumulator bits;
};

}  // namespace

void MeasurementSetting::validate() const {
  if (angles.size() < 2) {
    throw std::invalid_argument("the GHZ simulation needs at least two players");
  }
}

GhzSharedRandomness make_shared_randomness(std::uint64_t seed, std::uint64_t replica,
                                           std::size_t players) {
  const std::uint64_t key = derive_key(seed, replica);
  GhzSharedRandomness shared;
  shared.first_run = RandTree(derive_key(key, kFirstRun));
  shared.second_run = RandTree(derive_key(key, kSecondRun));
  RandomStream bit_stream(derive_key(key, kSharedBits));
  shared.bits.reserve(players > 0 ? players - 1 : 0);
  for (std::size_t i = 0; i + 1 < players; ++i) {
    shared.bits.push_back(bit_stream.sign());
  }
  RandomStream private_stream(derive_key(key, kPrivate));
  shared.u1 = private_stream.uniform(-1.0, 1.0);
  shared.u2 = private_stream.uniform(-1.0, 1.0);
  return shared;
}

Sign toner_bacon_sign(const UnitVec3& l1, const UnitVec3& l2, const UnitVec3& a) {
  return sgn(dot(l1, a) + dot(l2, a));
}

RunTrace simulate_traced(const MeasurementSetting& setting, const GhzSharedRandomness& shared) {
  setting.validate();
  const std::size_t n = setting.players();
  if (shared.bits.size() != n - 1) {
    throw std::invalid_argument("shared randomness holds the wrong number of sign bits");
  }
  const std::span<const Angle> others(setting.angles.data(), n - 1);

  // Steps 1-3: player n is the referee of two independent sampling runs.
  const uvs::Transcript first = uvs::uvs_messages(others, 1, shared.first_run);
  const uvs::Transcript second = uvs::uvs_messages(others, 1, shared.second_run);

  RunTrace trace;
  trace.theta1 = uvs::uvs_combine(first, 1, shared.first_run);
  trace.theta2 = uvs::uvs_combine(second, 1, shared.second_run);
  trace.first_run_bits = first.total_bits;
  trace.second_run_bits = second.total_bits;

  // Step 4: random heights lift the longitudes onto the hemisphere.
  trace.lambda1 = hemisphere_point(trace.theta1, shared.u1);
  trace.lambda2 = hemisphere_point(trace.theta2, shared.u2);

  // Steps 5-6.
  const UnitVec3 a_n = embed_equatorial(setting.angles.back(), true);
  Sign parity = Sign::plus();
  trace.record.outcomes.reserve(n);
  for (const Sign b : shared.bits) {
    trace.record.outcomes.push_back(b);
    parity = parity * b;
  }
  trace.record.outcomes.push_back(parity * toner_bacon_sign(trace.lambda1, trace.lambda2, a_n));
  trace.record.bits_used = first.total_bits + second.total_bits;
  return trace;
}

RunRecord simulate_once(const MeasurementSetting& setting, const GhzSharedRandomness& shared) {
  return simulate_traced(setting, shared).record;
}

Sign subset_product(const OutcomeVector& outcomes, const std::vector<std::size_t>& subset) {
  Sign p = Sign::plus();
  for (const std::size_t i : subset) {
    p = p * outcomes.at(i);
  }
  return p;
}

std::vector<std::vector<std::size_t>> proper_subsets(std::size_t n) {
  if (n == 0 || n > 20) {
    throw std::invalid_argument("subset enumeration supports 1..20 players");
  }
  std::vector<std::vector<std::size_t>> out;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) {
        s.push_back(i);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

Estimate estimate_run(const MeasurementSetting& setting, std::uint64_t samples, std::uint64_t seed,
                      const EstimateOptions& options) {
  setting.validate();
  if (samples == 0) {
    throw std::invalid_argument("estimate needs at least one run");
  }
  for (const auto& s : options.subsets) {
    if (s.empty() || s.size() >= setting.players() ||
        std::any_of(s.begin(), s.end(), [&](std::size_t i) { return i >= setting.players(); })) {
      throw std::invalid_argument("subsets must be proper, nonempty and in range");
    }
  }

  const unsigned workers = resolve_workers(options.workers, samples);
  std::vector<Partial> partials(workers);
  for_each_slice(samples, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    Partial& p = partials[w];
    p.subset_negatives.assign(options.subsets.size(), 0);
    for (std::uint64_t r = begin; r < end; ++r) {
      const RunRecord rec =
          simulate_once(setting, make_shared_randomness(seed, r, setting.players()));
      bool negative = false;
      for (const Sign o : rec.outcomes) {
        negative ^= o.is_negative();
      }
      p.full_negatives += negative ? 1 : 0;
      for (std::size_t s = 0; s < options.subsets.size(); ++s) {
        p.subset_negatives[s] += subset_product(rec.outcomes, options.subsets[s]).is_negative();
      }
      p.bits.add(rec.bits_used);
    }
  });

  std::uint64_t full_negatives = 0;
  std::vector<std::uint64_t> subset_negatives(options.subsets.size(), 0);
  stats::CostAccumulator bits;
  for (const Partial& p : partials) {
    full_negatives += p.full_negatives;
    for (std::size_t s = 0; s < subset_negatives.size(); ++s) {
      subset_negatives[s] += p.subset_negatives[s];
    }
    bits.merge(p.bits);
  }

  Estimate est;
  est.full = stats::sign_estimate(full_negatives, samples);
  for (const std::uint64_t neg : subset_negatives) {
    est.subset_correlators.push_back(stats::sign_estimate(neg, samples));
  }
  est.bits = bits.summary();
  return est;
}

std::string run_export_json(const MeasurementSetting& setting, std::uint64_t seed,
                            std::uint64_t samples, const Estimate& estimate,
                            const EstimateOptions& options) {
  nlohmann::ordered_json doc;
  doc["n"] = setting.players();
  auto angles = nlohmann::ordered_json::array();
  for (const Angle a : setting.angles) {
    angles.push_back(a.radians());
  }
  doc["angles"] = std::move(angles);
  doc["seed"] = seed;
  doc["N"] = samples;
  doc["correlator"] = estimate.full.mean;
  doc["stderr"] = estimate.full.std_error;
  auto subsets = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < options.subsets.size(); ++s) {
    subsets.push_back({{"subset", options.subsets[s]},
                       {"mean", estimate.subset_correlators[s].mean},
                       {"stderr", estimate.subset_correlators[s].std_error}});
  }
  doc["subset_correlators"] = std::move(subsets);
  doc["mean_bits"] = estimate.bits.mean;
  doc["max_bits"] = estimate.bits.max;
  return doc.dump();
}

}  // namespace ghzsim::ghz
