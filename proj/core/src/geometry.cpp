// Copyright 2026 The GroundNav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "groundnav/geometry.hpp"

#include <algorithm>
#include <limits>

namespace groundnav
{

double normalize_angle(double radians)
{
  double a = std::fmod(radians + kPi, 2.0 * kPi);
  if (a < 0.0) {
    a += 2.0 * kPi;
  }
  a -= kPi;
  // fmod maps pi to -pi; the canonical range is (-pi, pi].
  return a <= -kPi ? kPi : a;
}

std::array<Vec2, 4> OrientedRect::corners() const
{
  const std::array<Vec2, 4> local = {{
    {half_extent.x, half_extent.y},
    {-half_extent.x, half_extent.y},
    {-half_extent.x, -half_extent.y},
    {half_extent.x, -half_extent.y},
  }};
  std::array<Vec2, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = center + rotate(local[i], yaw);
  }
  return out;
}

bool OrientedRect::contains(Vec2 p, double tolerance) const
{
  const Vec2 local = rotate(p - center, -yaw);
  return std::abs(local.x) <= half_extent.x + tolerance &&
         std::abs(local.y) <= half_extent.y + tolerance;
}

double OrientedRect::distance_to(Vec2 p) const
{
  const Vec2 local = rotate(p - center, -yaw);
  const double dx = std::max(std::abs(local.x) - half_extent.x, 0.0);
  const double dy = std::max(std::abs(local.y) - half_extent.y, 0.0);
  return std::hypot(dx, dy);
}

namespace
{

void project(const std::array<Vec2, 4> & poly, Vec2 axis, double & lo, double & hi)
{
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (const Vec2 & p : poly) {
    const double d = dot(p, axis);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
}

bool separated_on_edges(
  const std::array<Vec2, 4> & edges_of, const std::array<Vec2, 4> & a,
  const std::array<Vec2, 4> & b, double tolerance)
{
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec2 e = edges_of[(i + 1) % 4] - edges_of[i];
    const double len = norm(e);
    if (len == 0.0) {
      continue;
    }
    const Vec2 axis{-e.y / len, e.x / len};
    double alo, ahi, blo, bhi;
    project(a, axis, alo, ahi);
    project(b, axis, blo, bhi);
    if (std::min(ahi, bhi) - std::max(alo, blo) <= tolerance) {
      return true;
    }
  }
  return false;
}

}  // namespace

bool interiors_overlap(
  const std::array<Vec2, 4> & a, const std::array<Vec2, 4> & b,
  double tolerance)
{
  return !separated_on_edges(a, a, b, tolerance) &&
         !separated_on_edges(b, a, b, tolerance);
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b)
{
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) {
    return distance(p, a);
  }
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

double rect_distance(const OrientedRect & a, const OrientedRect & b)
{
  const auto ca = a.corners();
  const auto cb = b.corners();
  if (interiors_overlap(ca, cb, 0.0)) {
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      best = std::min(best, point_segment_distance(ca[i], cb[j], cb[(j + 1) % 4]));
      best = std::min(best, point_segment_distance(cb[i], ca[j], ca[(j + 1) % 4]));
    }
  }
  return best;
}

}  // namespace groundnav
