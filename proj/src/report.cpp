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

#include "ghzsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace ghzsim::report {
namespace {

const char* comparison_name(Comparison c) {
  switch (c) {
    case Comparison::kWithin:
      return "within";
    case Comparison::kAtLeast:
      return "at_least";
    case Comparison::kAtMost:
      return "at_most";
  }
  return "within";
}

}  // namespace

Row within(std::string name, std::size_t n, std::string tag, std::uint64_t samples,
           double statistic, double target, double tolerance) {
  const bool pass = std::fabs(statistic - target) <= tolerance;
  return {std::move(name), n, std::move(tag), samples, statistic, target, tolerance,
          Comparison::kWithin, pass};
}

Row at_least(std::string name, std::size_t n, std::string tag, std::uint64_t samples,
             double statistic, double threshold) {
  return {std::move(name), n, std::move(tag), samples, statistic, threshold, 0.0,
          Comparison::kAtLeast, statistic >= threshold};
}

Row at_most(std::string name, std::size_t n, std::string tag, std::uint64_t samples,
            double statistic, double threshold) {
  return {std::move(name), n, std::move(tag), samples, statistic, threshold, 0.0,
          Comparison::kAtMost, statistic <= threshold};
}

bool all_pass(std::span<const Row> rows) {
  return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
}

std::string format_float(double x) { return fmt::format("{:.12g}", x); }

nlohmann::ordered_json to_json(const Row& row) {
  nlohmann::ordered_json j;
  j["name"] = row.name;
  j["value"] = row.statistic;
  j["target"] = row.target;
  j["tolerance"] = row.tolerance;
  j["pass"] = row.pass;
  j["comparison"] = comparison_name(row.comparison);
  j["n"] = row.n;
  j["k_or_subset"] = row.k_or_subset;
  j["N"] = row.samples;
  return j;
}

void write_csv(std::ostream& out, std::span<const Row> rows) {
  out << "test_name,n,k_or_subset,N,statistic,target,tolerance,pass\n";
  for (const Row& r : rows) {
    out << fmt::format("{},{},\"{}\",{},{},{},{},{}\n", r.name, r.n, r.k_or_subset, r.samples,
                       format_float(r.statistic), format_float(r.target),
                       format_float(r.tolerance), r.pass ? "true" : "false");
  }
}

std::string summary_line(const Row& row) {
  std::string bound;
  switch (row.comparison) {
    case Comparison::kWithin:
      bound = fmt::format("target {} +/- {}", format_float(row.target), format_float(row.tolerance));
      break;
    case Comparison::kAtLeast:
      bound = fmt::format(">= {}", format_float(row.target));
      break;
    case Comparison::kAtMost:
      bound = fmt::format("<= {}", format_float(row.target));
      break;
  }
  return fmt::format("[{}] {} (n={} {} N={}): {} {}", row.pass ? "PASS" : "FAIL", row.name, row.n,
                     row.k_or_subset, row.samples, format_float(row.statistic), bound);
}

}  // namespace ghzsim::report
