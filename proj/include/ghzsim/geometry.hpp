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
 * @file geometry.hpp
 * Angles on the circle, arcs, and the unit vectors on the sphere that the
 * hemisphere post-processing works with.
 */
#pragma once

#include <numbers>

namespace ghzsim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A point on the circle, stored as its representative in [0, 2π).
class Angle {
 public:
  constexpr Angle() = default;

  /// Throws std::invalid_argument on non-finite input.
  static Angle wrap(double radians);

  [[nodiscard]] constexpr double radians() const noexcept { return value_; }

  friend constexpr bool operator==(Angle, Angle) = default;

 private:
  explicit constexpr Angle(double canonical) : value_(canonical) {}
  double value_ = 0.0;
};

[[nodiscard]] Angle wrap_angle(double radians);

/// Signed shortest displacement from `from` to `to`, in [-π, π].
[[nodiscard]] double angular_offset(Angle from, Angle to);

/// Closed arc {center + x : |x| <= half_width}, with 0 < half_width <= π.
class Arc {
 public:
  Arc(Angle center, double half_width);

  [[nodiscard]] Angle center() const noexcept { return center_; }
  [[nodiscard]] double half_width() const noexcept { return half_width_; }
  /// Lower end of the arc, i.e. center - half_width, wrapped.
  [[nodiscard]] Angle start() const;

 private:
  Angle center_;
  double half_width_;
};

[[nodiscard]] bool arc_contains(const Arc& arc, Angle t);

class Sign {
 public:
  static constexpr Sign plus() { return Sign(1); }
  static constexpr Sign minus() { return Sign(-1); }

  [[nodiscard]] constexpr int value() const noexcept { return value_; }
  [[nodiscard]] constexpr bool is_negative() const noexcept { return value_ < 0; }

  friend constexpr Sign operator*(Sign a, Sign b) { return Sign(a.value_ * b.value_); }
  friend constexpr bool operator==(Sign, Sign) = default;

 private:
  explicit constexpr Sign(int v) : value_(v) {}
  int value_;
};

/// +1 for x >= 0 (zero included), -1 otherwise.
[[nodiscard]] Sign sgn(double x);

struct UnitVec3 {
  double x = 1.0;
  double y = 0.0;
  double z = 0.0;

  [[nodiscard]] double norm() const;
};

[[nodiscard]] double dot(const UnitVec3& a, const UnitVec3& b);

/// (cos t, sin t, 0), or (cos t, -sin t, 0) when `negate_second` is set.
[[nodiscard]] UnitVec3 embed_equatorial(Angle t, bool negate_second);

/**
 * Point with longitude `theta` and height `u` on the unit sphere:
 * (cos θ sin φ, sin θ sin φ, cos φ) with φ = arccos u.
 *
 * With θ uniform on an arc of half-width π/2 about c and u uniform on
 * [-1, 1] the result is uniform on the closed hemisphere about
 * embed_equatorial(c, false). Throws std::invalid_argument unless
 * -1 <= u <= 1.
 */
[[nodiscard]] UnitVec3 hemisphere_point(Angle theta, double u);

}  // namespace ghzsim
