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
 * @file report.hpp
 * Pass/fail rows shared by the CLI reports and the acceptance runner.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "json.hpp"

namespace ghzsim::report {

enum class Comparison {
  kWithin,   // |statistic - target| <= tolerance
  kAtLeast,  // statistic >= target
  kAtMost,   // statistic <= target
};

struct Row {
  std::string name;
  std::size_t n = 0;
  std::string k_or_subset;
  std::uint64_t samples = 0;
  double statistic = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::kWithin;
  bool pass = false;
};

[[nodiscard]] Row within(std::string name, std::size_t n, std::string tag, std::uint64_t samples,
                         double statistic, double target, double tolerance);
[[nodiscard]] Row at_least(std::string name, std::size_t n, std::string tag,
                           std::uint64_t samples, double statistic, double threshold);
[[nodiscard]] Row at_most(std::string name, std::size_t n, std::string tag, std::uint64_t samples,
                          double statistic, double threshold);

[[nodiscard]] bool all_pass(std::span<const Row> rows);

/// 12 significant digits, as used in every CSV output.
[[nodiscard]] std::string format_float(double x);

[[nodiscard]] nlohmann::ordered_json to_json(const Row& row);

/// Header then one line per row:
/// test_name,n,k_or_subset,N,statistic,target,tolerance,pass
void write_csv(std::ostream& out, std::span<const Row> rows);

/// One human-readable PASS/FAIL line.
[[nodiscard]] std::string summary_line(const Row& row);

}  // namespace ghzsim::report
