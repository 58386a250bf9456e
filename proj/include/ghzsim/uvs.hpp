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
 * @file uvs.hpp
 * Uniform vector sampling: n players, each holding an angle, send one
 * message apiece to a referee, who then outputs an angle uniform on the arc
 * of half-width π/2^k centered at the sum of their angles.
 *
 * The protocol is a recursion over levels. At level m the players
 * 1..m-1 solve the problem at a finer precision k + j + 1, player m solves
 * its one-player instance at the same precision, and the referee adds the
 * two results plus a public shift b·(π/2^k)(1 - 2^-j). Unrolled, every
 * player sends a single fixed-length message whose length is fixed by the
 * public coins, so all messages can be sent in one simultaneous round.
 */
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ghzsim/geometry.hpp"
#include "ghzsim/random.hpp"

namespace ghzsim::uvs {

/// Message payload; wide enough for any precision level.
using Codeword = boost::multiprecision::cpp_int;

struct UvsParams {
  std::size_t n = 1;
  std::uint64_t k = 1;

  /// Throws std::invalid_argument unless n >= 1 and k >= 1.
  void validate() const;
};

struct Message {
  std::size_t sender = 0;  // 0-based player index
  Codeword t;
  std::uint64_t bit_length = 0;
};

struct Transcript {
  std::vector<Message> messages;
  std::uint64_t total_bits = 0;
};

/// Half-width π/2^k of the target arc at precision k.
[[nodiscard]] double arc_half_width(std::uint64_t k);

/// δ + t·π/2^(k-1), wrapped. The grid point the referee reconstructs.
[[nodiscard]] Angle grid_point(Angle delta, const Codeword& t, std::uint64_t k);

/**
 * One-player message: the least t in {0, ..., 2^k - 1} whose grid point
 * lies in Arc(alpha, π/2^k). Encoded in exactly k bits.
 */
[[nodiscard]] Message base_message(Angle alpha, std::uint64_t k, Angle delta,
                                   std::size_t sender = 0);

/// Throws std::out_of_range if the codeword does not fit in k bits.
[[nodiscard]] Angle base_combine(Angle delta, const Message& msg, std::uint64_t k);

/**
 * Precision level of every player after unrolling the recursion.
 * `j_chain` lists the geometric indices from level n down to level 2.
 */
[[nodiscard]] std::vector<std::uint64_t> effective_k_schedule(
    std::size_t n, std::uint64_t k, std::span<const std::uint64_t> j_chain);

/// Geometric indices of `rt` for levels n, n-1, ..., 2.
[[nodiscard]] std::vector<std::uint64_t> j_chain(const RandTree& rt, std::size_t n);

[[nodiscard]] Transcript uvs_messages(std::span<const Angle> angles, std::uint64_t k,
                                      const RandTree& rt);

/// Referee side. Throws std::invalid_argument if the transcript does not
/// match the message layout implied by `rt` and `k`.
[[nodiscard]] Angle uvs_combine(const Transcript& transcript, std::uint64_t k,
                                const RandTree& rt);

/// Exact expected total message length, n·k + n² + n - 2.
[[nodiscard]] double expected_cost_exact(std::size_t n, std::uint64_t k);

/// Largest |l(n,k) - Σ_j 2^-(j+1) (l(n-1,k+j+1) + l(1,k+j+1))| over the grid,
/// with the sum truncated at j = 200.
[[nodiscard]] double cost_recursion_check(std::size_t n_max, std::uint64_t k_max);

/// JSON: {run_id, n, k, messages: [{sender, t, bit_length}], total_bits}.
/// t is a number when it fits in 64 bits and a decimal string otherwise.
[[nodiscard]] std::string transcript_json(const Transcript& transcript, std::uint64_t run_id,
                                          std::uint64_t k);

}  // namespace ghzsim::uvs
