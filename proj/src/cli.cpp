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

#include "ghzsim/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "ghzsim/acceptance.hpp"
#include "ghzsim/ghz.hpp"
#include "ghzsim/lemma1.hpp"
#include "ghzsim/oracle.hpp"
#include "ghzsim/parallel.hpp"
#include "ghzsim/random.hpp"
#include "ghzsim/report.hpp"
#include "ghzsim/stats.hpp"
#include "ghzsim/uvs.hpp"
#include "json.hpp"

namespace ghzsim::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kAngleStreamLabel = 0x616e676c6573ULL;  // "angles"
constexpr double kPValueFloor = 1e-3;

struct Outcome {
  std::vector<report::Row> rows;
  Json extra = Json::object();
  std::optional<stats::CostSummary> bits;
  std::string csv_override;  // raw CSV for table-like outputs
};

std::string subset_tag(const std::vector<std::size_t>& subset) {
  std::string s = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    s += (i ? "," : "") + std::to_string(subset[i] + 1);
  }
  return s + "}";
}

double angle_sum(const std::vector<Angle>& angles) {
  double s = 0.0;
  for (const Angle a : angles) {
    s += a.radians();
  }
  return s;
}

Json bits_json(const stats::CostSummary& s) {
  Json j;
  j["mean"] = s.mean;
  j["stderr"] = s.std_error;
  j["max"] = s.max;
  j["total"] = s.total;
  j["count"] = s.count;
  Json hist = Json::object();
  for (const auto& [bits, runs] : s.histogram) {
    hist[std::to_string(bits)] = runs;
  }
  j["histogram"] = std::move(hist);
  return j;
}

Json config_json(const ExperimentConfig& c, const std::vector<Angle>& angles) {
  Json j;
  if (c.n) {
    j["n"] = *c.n;
  }
  j["k"] = c.k;
  if (!angles.empty()) {
    Json list = Json::array();
    for (const Angle a : angles) {
      list.push_back(a.radians());
    }
    j["angles"] = std::move(list);
  }
  if (c.samples) {
    j["samples"] = *c.samples;
  }
  j["seed"] = c.seed;
  if (c.subcommand == "oracle") {
    j["method"] = c.method;
  }
  if (c.subcommand == "bench") {
    j["n_range"] = c.n_range;
  }
  if (c.subcommand == "lemma1") {
    j["i_max"] = c.i_max;
  }
  return j;
}

report::Row bits_row(const std::string& name, std::size_t n, const std::string& tag,
                     const stats::CostSummary& s, double exact) {
  return report::within(name, n, tag, s.count, s.mean, exact, 5.0 * s.std_error);
}

Outcome run_simulate(const ExperimentConfig& c, const std::vector<Angle>& angles) {
  const std::uint64_t samples = c.samples.value_or(100000);
  ghz::MeasurementSetting setting{angles};
  if (setting.players() < 2) {
    throw UsageError("simulate needs at least two players");
  }
  const std::size_t n = setting.players();
  ghz::EstimateOptions opts;
  opts.workers = c.workers;
  if (n <= 10) {
    opts.subsets = ghz::proper_subsets(n);
  }
  const ghz::Estimate est = ghz::estimate_run(setting, samples, c.seed, opts);

  Outcome out;
  const double tol = 5.0 / std::sqrt(static_cast<double>(samples));
  out.rows.push_back(report::within("full_correlation", n, "all", samples, est.full.mean,
                                    std::cos(angle_sum(angles)), tol));
  for (std::size_t s = 0; s < opts.subsets.size(); ++s) {
    out.rows.push_back(report::within("subset_correlation", n, subset_tag(opts.subsets[s]),
                                      samples, est.subset_correlators[s].mean, 0.0, tol));
  }
  out.rows.push_back(bits_row("mean_bits", n, "k=1", est.bits,
                              2.0 * uvs::expected_cost_exact(n - 1, 1)));
  if (n == 2) {
    out.rows.push_back(report::within("max_bits", n, "k=1", samples,
                                      static_cast<double>(est.bits.max), 2.0, 0.0));
  }
  out.extra["run"] = Json::parse(ghz::run_export_json(setting, c.seed, samples, est, opts));
  out.bits = est.bits;
  return out;
}

Outcome run_uvs(const ExperimentConfig& c, const std::vector<Angle>& angles) {
  const std::uint64_t samples = c.samples.value_or(100000);
  const std::size_t n = angles.size();
  uvs::UvsParams{n, c.k}.validate();
  const unsigned workers = resolve_workers(c.workers, samples);

  std::vector<Angle> outputs(samples);
  std::vector<stats::CostAccumulator> costs(workers);
  std::vector<std::uint64_t> misses(workers, 0);
  const Arc target(wrap_angle(angle_sum(angles)), uvs::arc_half_width(c.k));
  for_each_slice(samples, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t r = begin; r < end; ++r) {
      const RandTree rt(derive_key(c.seed, r));
      const uvs::Transcript t = uvs::uvs_messages(angles, c.k, rt);
      outputs[r] = uvs::uvs_combine(t, c.k, rt);
      misses[w] += arc_contains(target, outputs[r]) ? 0 : 1;
      costs[w].add(t.total_bits);
    }
  });
  stats::CostAccumulator cost;
  std::uint64_t missed = 0;
  for (unsigned w = 0; w < workers; ++w) {
    cost.merge(costs[w]);
    missed += misses[w];
  }
  const stats::CostSummary summary = cost.summary();

  Outcome out;
  const std::string tag = fmt::format("k={}", c.k);
  out.rows.push_back(report::within("arc_membership", n, tag, samples,
                                    1.0 - static_cast<double>(missed) / samples, 1.0, 0.0));
  double p_value = 0.0;
  if (missed == 0) {
    p_value = stats::ks_uniform_arc(outputs, target).p_value;
  }
  out.rows.push_back(report::at_least("ks_uniform_arc", n, tag, samples, p_value, kPValueFloor));
  out.rows.push_back(bits_row("mean_bits", n, tag, summary, uvs::expected_cost_exact(n, c.k)));

  Json transcripts = Json::array();
  for (std::uint64_t r = 0; r < std::min<std::uint64_t>(samples, 3); ++r) {
    const RandTree rt(derive_key(c.seed, r));
    transcripts.push_back(Json::parse(uvs::transcript_json(uvs::uvs_messages(angles, c.k, rt), r, c.k)));
  }
  out.extra["sample_transcripts"] = std::move(transcripts);
  out.bits = summary;
  return out;
}

Outcome run_lemma1(const ExperimentConfig& c, Format format) {
  Outcome out;
  if (format == Format::kCsv) {
    std::ostringstream csv;
    lemma1::write_density_csv(csv, c.i_max, c.grid);
    out.csv_override = csv.str();
    return out;
  }
  const std::uint64_t samples = c.samples.value_or(1000000);
  const unsigned workers = resolve_workers(c.workers, samples);
  std::vector<double> draws(samples);
  for_each_slice(samples, workers, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t r = begin; r < end; ++r) {
      RandomStream stream(derive_key(c.seed, r));
      draws[r] = lemma1::lemma1_sample(stream);
    }
  });
  double mean = 0.0;
  for (const double d : draws) {
    mean += d;
  }
  mean /= static_cast<double>(samples);
  const auto ks = stats::ks_uniform01(draws);
  const std::string tag = fmt::format("i_max={}", c.i_max);
  out.rows.push_back(report::at_least("ks_uniform01", 1, tag, samples, ks.p_value, kPValueFloor));
  out.rows.push_back(report::within("sample_mean", 1, tag, samples, mean, 0.5,
                                    5.0 / std::sqrt(12.0 * static_cast<double>(samples))));
  // Interior grid where the truncated mixture must be exactly flat.
  double worst = 0.0;
  const double edge = std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(c.i_max, 1000)));
  for (int p = 1; p < 1000; ++p) {
    const double x = p / 1000.0;
    if (x > edge && x < 1.0 - edge) {
      worst = std::max(worst, std::fabs(lemma1::mixture_density(x, c.i_max) - 1.0));
    }
  }
  out.rows.push_back(report::at_most("mixture_density_flatness", 1, tag, 999, worst, 1e-12));
  return out;
}

Outcome run_oracle(const ExperimentConfig& c, const std::vector<Angle>& angles, Format format) {
  oracle::OutcomeDistribution dist;
  if (c.method == "formula") {
    if (angles.size() > 20) {
      throw UsageError("formula oracle supports at most 20 players");
    }
    dist = oracle::exact_distribution(angles);
  } else if (c.method == "tensor") {
    if (angles.size() > 12) {
      throw UsageError("tensor oracle supports at most 12 players");
    }
    dist = oracle::born_rule_distribution(angles);
  } else {
    throw UsageError("unknown oracle method '" + c.method + "' (expected formula or tensor)");
  }
  Outcome out;
  if (format == Format::kCsv) {
    std::ostringstream csv;
    oracle::write_distribution_csv(csv, dist);
    out.csv_override = csv.str();
    return out;
  }
  const std::size_t n = dist.players;
  const std::uint64_t full_mask = (std::uint64_t{1} << n) - 1;
  out.rows.push_back(report::within("normalization", n, c.method, 0, dist.total(), 1.0, 1e-12));
  out.rows.push_back(report::within("full_correlation", n, c.method, 0, dist.correlator(full_mask),
                                    std::cos(angle_sum(angles)), 1e-12));
  double worst = 0.0;
  for (std::uint64_t mask = 1; mask < full_mask; ++mask) {
    worst = std::max(worst, std::fabs(dist.correlator(mask)));
  }
  out.rows.push_back(report::at_most("max_marginal_correlation", n, c.method, 0, worst, 1e-12));
  Json table = Json::array();
  for (std::uint64_t o = 0; o < dist.probability.size(); ++o) {
    table.push_back({{"outcome", oracle::outcome_label(o, n)}, {"probability", dist.probability[o]}});
  }
  out.extra["table"] = std::move(table);
  return out;
}

Outcome run_bench(const ExperimentConfig& c, Format format) {
  const auto [lo, hi] = parse_range(c.n_range);
  const std::uint64_t samples = c.samples.value_or(100000);
  uvs::UvsParams{lo, c.k}.validate();
  const unsigned workers = resolve_workers(c.workers, samples);

  Outcome out;
  std::ostringstream csv;
  csv << "n,k,N,mean_bits,stderr,closed_form,quadratic_bound,slack,pass\n";
  Json sweep = Json::array();
  for (std::size_t n = lo; n <= hi; ++n) {
    const std::vector<Angle> angles = resolve_angles("", n, derive_key(c.seed, n));
    std::vector<stats::CostAccumulator> costs(workers);
    for_each_slice(samples, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
      for (std::uint64_t r = begin; r < end; ++r) {
        const RandTree rt(derive_key(derive_key(c.seed, n), r));
        costs[w].add(uvs::uvs_messages(angles, c.k, rt).total_bits);
      }
    });
    stats::CostAccumulator cost;
    for (const auto& a : costs) {
      cost.merge(a);
    }
    const stats::CostSummary s = cost.summary();
    const double exact = uvs::expected_cost_exact(n, c.k);
    const double bound = static_cast<double>(n) * static_cast<double>(n + c.k);
    const report::Row row = bits_row("mean_bits", n, fmt::format("k={}", c.k), s, exact);
    out.rows.push_back(row);
    csv << fmt::format("{},{},{},{},{},{},{},{},{}\n", n, c.k, samples, report::format_float(s.mean),
                       report::format_float(s.std_error), report::format_float(exact),
                       report::format_float(bound), report::format_float(exact - bound),
                       row.pass ? "true" : "false");
    sweep.push_back({{"n", n},
                     {"mean_bits", s.mean},
                     {"stderr", s.std_error},
                     {"closed_form", exact},
                     {"quadratic_bound", bound},
                     {"ratio_to_n_squared", exact / static_cast<double>(n * n)}});
  }
  if (format == Format::kCsv) {
    out.csv_override = csv.str();
  }
  out.extra["sweep"] = std::move(sweep);
  return out;
}

Outcome run_verify(const ExperimentConfig& c) {
  acceptance::Options opts;
  opts.workers = c.workers;
  opts.seed = c.seed;
  Outcome out;
  for (const auto& criterion : acceptance::run_all(opts)) {
    for (report::Row row : criterion.rows) {
      row.name = fmt::format("C{}.{}", criterion.id, row.name);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace

std::vector<Angle> resolve_angles(const std::string& spec, std::optional<std::size_t> n,
                                  std::uint64_t seed) {
  std::vector<Angle> angles;
  std::string text = spec;
  if (text.empty()) {
    if (!n) {
      throw UsageError("either --n or --angles is required");
    }
    text = "random:" + std::to_string(*n);
  }
  if (text.rfind("random:", 0) == 0) {
    const std::string count_text = text.substr(7);
    std::size_t count = 0;
    const auto res =
        std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (res.ec != std::errc{} || res.ptr != count_text.data() + count_text.size() || count == 0) {
      throw UsageError("malformed angle spec '" + text + "'");
    }
    RandomStream stream(derive_key(seed, kAngleStreamLabel));
    for (std::size_t i = 0; i < count; ++i) {
      angles.push_back(stream.uniform_angle());
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t comma = std::min(text.find(',', pos), text.size());
      const std::string item = text.substr(pos, comma - pos);
      double value = 0.0;
      const auto res = std::from_chars(item.data(), item.data() + item.size(), value);
      if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size() ||
          !std::isfinite(value)) {
        throw UsageError("malformed angle '" + item + "'");
      }
      angles.push_back(wrap_angle(value));
      pos = comma + 1;
    }
  }
  if (n && angles.size() != *n) {
    throw UsageError(fmt::format("--n {} does not match {} angles", *n, angles.size()));
  }
  return angles;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& spec) {
  const std::size_t dots = spec.find("..");
  std::size_t lo = 0;
  std::size_t hi = 0;
  if (dots != std::string::npos) {
    const char* begin = spec.data();
    const auto a = std::from_chars(begin, begin + dots, lo);
    const auto b = std::from_chars(begin + dots + 2, begin + spec.size(), hi);
    if (a.ec == std::errc{} && a.ptr == begin + dots && b.ec == std::errc{} &&
        b.ptr == begin + spec.size() && lo >= 1 && lo <= hi) {
      return {lo, hi};
    }
  }
  throw UsageError("malformed range '" + spec + "' (expected a..b with 1 <= a <= b)");
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const std::string& cmd = config.subcommand;
  const Format format =
      config.format.value_or(cmd == "bench" ? Format::kCsv : Format::kJson);
  if (config.workers > 1024) {
    throw UsageError("--workers must be at most 1024");
  }
  if (config.samples && *config.samples == 0) {
    throw UsageError("--samples must be positive");
  }
  if (config.k < 1 || config.k > 64) {
    throw UsageError("--k must lie in 1..64");
  }

  std::vector<Angle> angles;
  Outcome out;
  try {
    if (cmd == "simulate" || cmd == "uvs") {
      angles = resolve_angles(config.angles, config.n, config.seed);
      out = cmd == "simulate" ? run_simulate(config, angles) : run_uvs(config, angles);
    } else if (cmd == "oracle") {
      angles = resolve_angles(config.angles, config.n, config.seed);
      out = run_oracle(config, angles, format);
    } else if (cmd == "lemma1") {
      if (config.grid < 2) {
        throw UsageError("--grid must be at least 2");
      }
      out = run_lemma1(config, format);
    } else if (cmd == "bench") {
      out = run_bench(config, format);
    } else if (cmd == "verify") {
      out = run_verify(config);
    } else {
      throw UsageError("unknown subcommand '" + cmd + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  ExperimentReport rep;
  rep.exit_code = report::all_pass(out.rows) ? 0 : 1;
  if (!out.csv_override.empty()) {
    rep.text = out.csv_override;
  } else if (format == Format::kCsv) {
    std::ostringstream csv;
    report::write_csv(csv, out.rows);
    rep.text = csv.str();
  } else {
    Json doc;
    doc["command"] = cmd;
    doc["config"] = config_json(config, angles);
    Json results = Json::array();
    for (const auto& row : out.rows) {
      results.push_back(report::to_json(row));
    }
    doc["results"] = std::move(results);
    doc["total_bits_stats"] = out.bits ? bits_json(*out.bits) : Json(nullptr);
    for (auto& [key, value] : out.extra.items()) {
      doc[key] = value;
    }
    rep.text = doc.dump(2) + "\n";
  }
  return rep;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Classical simulation of equatorial GHZ measurements"};
  app.require_subcommand(1);

  ExperimentConfig config;
  std::optional<std::uint64_t> seed;
  std::string format;
  std::size_t n = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "64-bit seed (default: $GHZSIM_SEED or 0)");
    sub->add_option("--output,-o", config.output, "Write the report here instead of stdout");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--workers", config.workers, "Worker threads; results do not depend on it");
  };
  auto add_samples = [&](CLI::App* sub) {
    sub->add_option("--samples,-N", config.samples, "Number of independent runs");
  };
  auto add_angles = [&](CLI::App* sub) {
    sub->add_option("--n", n, "Number of players");
    sub->add_option("--angles", config.angles, "Comma-separated radians or random:<count>");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Run the GHZ simulation protocol");
  add_angles(simulate);
  add_samples(simulate);
  add_common(simulate);

  CLI::App* uvs_cmd = app.add_subcommand("uvs", "Sample uniform vectors and account bits");
  add_angles(uvs_cmd);
  uvs_cmd->add_option("--k", config.k, "Precision level (arc half-width pi/2^k)");
  add_samples(uvs_cmd);
  add_common(uvs_cmd);

  CLI::App* lemma = app.add_subcommand("lemma1", "Mixture sampler and density dump");
  add_samples(lemma);
  lemma->add_option("--i-max", config.i_max, "Mixture truncation for the density");
  lemma->add_option("--grid", config.grid, "Points in the CSV density dump");
  add_common(lemma);

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Exact outcome distribution");
  add_angles(oracle_cmd);
  oracle_cmd->add_option("--method", config.method, "formula or tensor");
  add_common(oracle_cmd);

  CLI::App* bench = app.add_subcommand("bench", "Communication cost sweep over n");
  bench->add_option("--n-range", config.n_range, "Inclusive player range a..b");
  bench->add_option("--k", config.k, "Precision level");
  add_samples(bench);
  add_common(bench);

  CLI::App* verify = app.add_subcommand("verify", "Run the full acceptance suite");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  for (CLI::App* sub : app.get_subcommands()) {
    const CLI::Option* opt = sub->get_option_no_throw("--n");
    if (opt != nullptr && opt->count() > 0) {
      config.n = n;
    }
  }
  if (seed) {
    config.seed = *seed;
  } else if (const char* env = std::getenv("GHZSIM_SEED")) {
    const std::string text(env);
    std::uint64_t value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
      std::cerr << "error: GHZSIM_SEED must be an unsigned 64-bit integer\n";
      return 2;
    }
    config.seed = value;
  }
  if (!format.empty()) {
    config.format = format == "csv" ? Format::kCsv : Format::kJson;
  }

  ExperimentReport rep;
  try {
    rep = run_experiment(config);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (config.output.empty()) {
    std::cout << rep.text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open " << config.output << "\n";
      return 2;
    }
    file << rep.text;
  }
  return rep.exit_code;
}

}  // namespace ghzsim::cli
