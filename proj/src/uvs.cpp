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

#include "ghzsim/uvs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace ghzsim::uvs {
namespace {

// Exponents past this point are all zero-width in double precision.
constexpr std::uint64_t kExponentCap = 4000;

int capped(std::uint64_t e) { return static_cast<int>(std::min(e, kExponentCap)); }

/// t / 2^k as a double, for t < 2^k.
double codeword_fraction(const Codeword& t, std::uint64_t k) {
  if (k <= 64) {
    return std::ldexp(static_cast<double>(t.convert_to<std::uint64_t>()), -capped(k));
  }
  const Codeword top = t >> static_cast<unsigned>(k - 64);
  return std::ldexp(static_cast<double>(top.convert_to<std::uint64_t>()), -64);
}

/// ceil(f · 2^k) for f in [0, 1), exactly.
Codeword scaled_ceil(double f, std::uint64_t k) {
  if (f <= 0.0) {
    return 0;
  }
  int exp = 0;
  const double mant = std::frexp(f, &exp);
  const auto m = static_cast<std::uint64_t>(std::ldexp(mant, 53));
  // f = m · 2^(exp - 53), so f · 2^k = m · 2^shift.
  const std::int64_t shift = static_cast<std::int64_t>(exp) - 53 + static_cast<std::int64_t>(std::min(k, kExponentCap));
  if (shift >= 0) {
    return Codeword(m) << static_cast<unsigned>(shift);
  }
  if (shift <= -64) {
    return 1;
  }
  const auto down = static_cast<unsigned>(-shift);
  const std::uint64_t q = m >> down;
  const bool exact = (m & ((std::uint64_t{1} << down) - 1)) == 0;
  return Codeword(exact ? q : q + 1);
}

bool fits(const Codeword& t, std::uint64_t bits) {
  if (t < 0) {
    return false;
  }
  return t == 0 || boost::multiprecision::msb(t) < bits;
}

Codeword pow2(std::uint64_t k) { return Codeword(1) << static_cast<unsigned>(std::min(k, kExponentCap)); }

}  // namespace

void UvsParams::validate() const {
  if (n < 1) {
    throw std::invalid_argument("vector sampling needs at least one player");
  }
  if (k < 1) {
    throw std::invalid_argument("precision level k must be at least 1");
  }
}

double arc_half_width(std::uint64_t k) { return std::ldexp(kPi, -capped(k)); }

Angle grid_point(Angle delta, const Codeword& t, std::uint64_t k) {
  return wrap_angle(delta.radians() + kTwoPi * codeword_fraction(t, k));
}

Message base_message(Angle alpha, std::uint64_t k, Angle delta, std::size_t sender) {
  UvsParams{1, k}.validate();
  const double half = arc_half_width(k);
  // Grid spacing equals the arc width, so the first grid point at or past
  // the arc start is inside the arc.
  const double gap = wrap_angle(alpha.radians() - half - delta.radians()).radians();
  Codeword t = scaled_ceil(gap / kTwoPi, k);
  const Codeword modulus = pow2(k);
  if (t >= modulus) {
    t -= modulus;
  }

  // Rounding can push the ceiling one step off near the arc ends; settle on
  // the least index whose grid point passes the membership test.
  if (k <= 52) {
    const Arc arc(alpha, half);
    const auto size = modulus.convert_to<std::uint64_t>();
    const auto base = t.convert_to<std::uint64_t>();
    std::uint64_t best = size;
    for (const std::uint64_t c : {(base + size - 1) % size, base, (base + 1) % size}) {
      if (c < best && arc_contains(arc, grid_point(delta, Codeword(c), k))) {
        best = c;
      }
    }
    if (best != size) {
      t = best;
    }
  }
  return Message{sender, std::move(t), k};
}

Angle base_combine(Angle delta, const Message& msg, std::uint64_t k) {
  if (!fits(msg.t, k)) {
    throw std::out_of_range("codeword does not fit in " + std::to_string(k) + " bits");
  }
  return grid_point(delta, msg.t, k);
}

std::vector<std::uint64_t> effective_k_schedule(std::size_t n, std::uint64_t k,
                                                std::span<const std::uint64_t> j_chain) {
  if (n < 1) {
    throw std::invalid_argument("schedule needs at least one player");
  }
  if (j_chain.size() != n - 1) {
    throw std::invalid_argument("j chain must hold one index per level n..2");
  }
  std::vector<std::uint64_t> levels(n);
  std::uint64_t level = k;
  // j_chain[0] belongs to level n, j_chain[n-2] to level 2.
  for (std::size_t m = n; m >= 2; --m) {
    level += j_chain[n - m] + 1;
    levels[m - 1] = level;
  }
  levels[0] = n == 1 ? k : levels[1];
  return levels;
}

std::vector<std::uint64_t> j_chain(const RandTree& rt, std::size_t n) {
  std::vector<std::uint64_t> chain;
  chain.reserve(n > 0 ? n - 1 : 0);
  for (std::size_t m = n; m >= 2; --m) {
    chain.push_back(rt.node(m).j);
  }
  return chain;
}

Transcript uvs_messages(std::span<const Angle> angles, std::uint64_t k, const RandTree& rt) {
  UvsParams{angles.size(), k}.validate();
  const std::size_t n = angles.size();
  const auto chain = j_chain(rt, n);
  const auto levels = effective_k_schedule(n, k, chain);

  Transcript transcript;
  transcript.messages.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Player i only sees its own angle and the public coins.
    transcript.messages.push_back(base_message(angles[i], levels[i], rt.leaf_offset(i), i));
    transcript.total_bits += levels[i];
  }
  return transcript;
}

Angle uvs_combine(const Transcript& transcript, std::uint64_t k, const RandTree& rt) {
  const std::size_t n = transcript.messages.size();
  UvsParams{n, k}.validate();
  const auto chain = j_chain(rt, n);
  const auto levels = effective_k_schedule(n, k, chain);

  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Message& msg = transcript.messages[i];
    if (msg.sender != i || msg.bit_length != levels[i]) {
      throw std::invalid_argument("transcript does not match the public coins at player " +
                                  std::to_string(i));
    }
    bits += msg.bit_length;
  }
  if (bits != transcript.total_bits) {
    throw std::invalid_argument("transcript bit total is inconsistent");
  }

  double theta = base_combine(rt.leaf_offset(0), transcript.messages[0], levels[0]).radians();
  for (std::size_t m = 2; m <= n; ++m) {
    const NodeCoins coins = rt.node(m);
    // levels[m-1] = k_m + j_m + 1, where k_m is the precision at level m.
    const std::uint64_t node_k = levels[m - 1] - coins.j - 1;
    const double right =
        base_combine(rt.leaf_offset(m - 1), transcript.messages[m - 1], levels[m - 1]).radians();
    const double shift =
        coins.b.value() * arc_half_width(node_k) * (1.0 - std::ldexp(1.0, -capped(coins.j)));
    theta = wrap_angle(theta + right + shift).radians();
  }
  return wrap_angle(theta);
}

double expected_cost_exact(std::size_t n, std::uint64_t k) {
  UvsParams{n, k}.validate();
  const auto nn = static_cast<double>(n);
  return nn * static_cast<double>(k) + nn * nn + nn - 2.0;
}

double cost_recursion_check(std::size_t n_max, std::uint64_t k_max) {
  UvsParams{n_max, k_max}.validate();
  double residual = 0.0;
  for (std::size_t n = 2; n <= n_max; ++n) {
    for (std::uint64_t k = 1; k <= k_max; ++k) {
      double rhs = 0.0;
      for (std::uint64_t j = 0; j <= 200; ++j) {
        const std::uint64_t child = k + j + 1;
        rhs += std::ldexp(expected_cost_exact(n - 1, child) + expected_cost_exact(1, child),
                          -static_cast<int>(j + 1));
      }
      residual = std::max(residual, std::fabs(expected_cost_exact(n, k) - rhs));
    }
  }
  return residual;
}

std::string transcript_json(const Transcript& transcript, std::uint64_t run_id, std::uint64_t k) {
  nlohmann::ordered_json doc;
  doc["run_id"] = run_id;
  doc["n"] = transcript.messages.size();
  doc["k"] = k;
  auto messages = nlohmann::ordered_json::array();
  for (const Message& msg : transcript.messages) {
    nlohmann::ordered_json entry;
    entry["sender"] = msg.sender;
    if (fits(msg.t, 64)) {
      entry["t"] = msg.t.convert_to<std::uint64_t>();
    } else {
      entry["t"] = msg.t.str();
    }
    entry["bit_length"] = msg.bit_length;
    messages.push_back(std::move(entry));
  }
  doc["messages"] = std::move(messages);
  doc["total_bits"] = transcript.total_bits;
  return doc.dump();
}

}  // namespace ghzsim::uvs
