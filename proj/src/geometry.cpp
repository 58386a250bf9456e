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

#include "ghzsim/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ghzsim {

Angle Angle::wrap(double radians) {
  if (!std::isfinite(radians)) {
    throw std::invalid_argument("angle must be finite");
  }
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) {
    r += kTwoPi;
  }
  // fmod of a tiny negative value plus 2π can round up to exactly 2π.
  if (r >= kTwoPi) {
    r = 0.0;
  }
  return Angle(r);
}

Angle wrap_angle(double radians) { return Angle::wrap(radians); }

double angular_offset(Angle from, Angle to) {
  double d = to.radians() - from.radians();
  if (d > kPi) {
    d -= kTwoPi;
  } else if (d < -kPi) {
    d += kTwoPi;
  }
  return d;
}

Arc::Arc(Angle center, double half_width) : center_(center), half_width_(half_width) {
  if (!(half_width > 0.0 && half_width <= kPi)) {
    throw std::invalid_argument("arc half-width must lie in (0, pi], got " +
                                std::to_string(half_width));
  }
}

Angle Arc::start() const { return wrap_angle(center_.radians() - half_width_); }

bool arc_contains(const Arc& arc, Angle t) {
  double d = std::fabs(t.radians() - arc.center().radians());
  if (d > kPi) {
    d = kTwoPi - d;
  }
  return d <= arc.half_width();
}

Sign sgn(double x) { return x >= 0.0 ? Sign::plus() : Sign::minus(); }

double UnitVec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double dot(const UnitVec3& a, const UnitVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

UnitVec3 embed_equatorial(Angle t, bool negate_second) {
  const double s = std::sin(t.radians());
  return {std::cos(t.radians()), negate_second ? -s : s, 0.0};
}

UnitVec3 hemisphere_point(Angle theta, double u) {
  if (!(u >= -1.0 && u <= 1.0)) {
    throw std::invalid_argument("hemisphere height must lie in [-1, 1]");
  }
  const double phi = std::acos(u);
  const double s = std::sin(phi);
  return {std::cos(theta.radians()) * s, std::sin(theta.radians()) * s, std::cos(phi)};
}

}  // namespace ghzsim
