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
 * @file cli.hpp
 * Experiment runner behind the `ghzsim` command line tool.
 *
 * Subcommands: simulate, uvs, lemma1, oracle, bench, verify. Reports are
 * JSON ({command, config, results, total_bits_stats}) or CSV, and depend
 * only on the configuration, never on the worker count.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzsim/geometry.hpp"

namespace ghzsim::cli {

enum class Format { kJson, kCsv };

struct ExperimentConfig {
  std::string subcommand;
  std::optional<std::size_t> n;
  std::uint64_t k = 1;
  std::string angles;  // "a,b,c" in radians or "random:<count>"; empty means random:n
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  std::string output;  // empty writes to stdout
  std::optional<Format> format;
  unsigned workers = 1;
  std::string method = "formula";  // oracle: formula | tensor
  std::string n_range = "2..12";   // bench
  std::uint64_t i_max = 40;        // lemma1
  int grid = 1001;                 // lemma1 density dump points
};

/// Bad flags or inconsistent configuration; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "a,b,c" or "random:<count>". `n`, when given, must match the
/// count. Random angles are uniform on [0, 2π) and derived from `seed`.
[[nodiscard]] std::vector<Angle> resolve_angles(const std::string& spec,
                                                std::optional<std::size_t> n, std::uint64_t seed);

/// Parses "a..b" into an inclusive range.
[[nodiscard]] std::pair<std::size_t, std::size_t> parse_range(const std::string& spec);

struct ExperimentReport {
  std::string text;
  int exit_code = 0;  // 0 all pass, 1 a statistical check failed
};

/// Throws UsageError for invalid configurations.
[[nodiscard]] ExperimentReport run_experiment(const ExperimentConfig& config);

/// Parses argv (CLI11), applies GHZSIM_SEED, runs, and writes the report.
/// Returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace ghzsim::cli
