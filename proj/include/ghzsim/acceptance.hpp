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
 * @file acceptance.hpp
 * End-to-end checks of the simulator, one function per criterion. Each
 * returns the rows it evaluated; a criterion passes when all rows pass.
 * Seeds are fixed, so every run of the suite sees the same samples.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ghzsim/report.hpp"

namespace ghzsim::acceptance {

struct Options {
  unsigned workers = 0;  // 0: one per hardware thread
  std::uint64_t seed = 0x5eed2011;
  std::function<void(const report::Row&)> on_row;  // progress hook
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<report::Row> rows;
  double seconds = 0.0;

  [[nodiscard]] bool pass() const { return !rows.empty() && report::all_pass(rows); }
};

Criterion full_correlation(const Options& options);
Criterion vanishing_marginals(const Options& options);
Criterion uvs_output_law(const Options& options);
Criterion lemma1_uniformity(const Options& options);
Criterion uvs_communication_cost(const Options& options);
Criterion ghz_communication_cost(const Options& options);
Criterion oracle_equivalence(const Options& options);
Criterion hemisphere_sign_identity(const Options& options);
Criterion determinism(const Options& options);

[[nodiscard]] std::vector<Criterion> run_all(const Options& options);

}  // namespace ghzsim::acceptance
