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

#include "ghzsim/random.hpp"

#include <bit>
#include <stdexcept>

namespace ghzsim {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kNodeTag = 0x6e6f6465ULL;  // "node"
constexpr std::uint64_t kLeafTag = 0x6c656166ULL;  // "leaf"

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_key(std::uint64_t parent, std::uint64_t label) noexcept {
  return mix64(mix64(parent + kGolden) ^ (label * kGolden + 0x632be59bd9b4e019ULL));
}

RandomStream::result_type RandomStream::operator()() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

double RandomStream::uniform01() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) noexcept {
  const double x = lo + (hi - lo) * uniform01();
  return x > hi ? hi : x;
}

bool RandomStream::fair_coin() noexcept {
  if (coin_left_ == 0) {
    coin_bits_ = (*this)();
    coin_left_ = 64;
  }
  const bool head = (coin_bits_ & 1U) != 0;
  coin_bits_ >>= 1;
  --coin_left_;
  return head;
}

Sign RandomStream::sign() noexcept { return fair_coin() ? Sign::plus() : Sign::minus(); }

std::uint64_t RandomStream::geometric_half() noexcept {
  // Each bit of a fresh word is an independent fair flip; trailing zeros
  // are the tails before the first head.
  std::uint64_t tails = 0;
  for (;;) {
    const std::uint64_t word = (*this)();
    if (word != 0) {
      return tails + static_cast<std::uint64_t>(std::countr_zero(word));
    }
    tails += 64;
  }
}

Angle RandomStream::uniform_angle() noexcept { return wrap_angle(kTwoPi * uniform01()); }

NodeCoins RandTree::node(std::size_t level) const {
  if (level < 2) {
    throw std::invalid_argument("internal nodes start at level 2");
  }
  RandomStream stream(derive_key(derive_key(key_, kNodeTag), level));
  NodeCoins coins;
  coins.j = stream.geometric_half();
  coins.b = stream.sign();
  return coins;
}

Angle RandTree::leaf_offset(std::size_t player) const {
  RandomStream stream(derive_key(derive_key(key_, kLeafTag), player));
  return stream.uniform_angle();
}

}  // namespace ghzsim
