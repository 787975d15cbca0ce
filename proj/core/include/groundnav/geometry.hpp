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

#ifndef GROUNDNAV__GEOMETRY_HPP_
#define GROUNDNAV__GEOMETRY_HPP_

#include <array>
#include <cmath>
#include <numbers>

namespace groundnav
{

inline constexpr double kPi = std::numbers::pi;

struct Vec2
{
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) {return {a.x + b.x, a.y + b.y};}
  friend Vec2 operator-(Vec2 a, Vec2 b) {return {a.x - b.x, a.y - b.y};}
  friend Vec2 operator*(double s, Vec2 a) {return {s * a.x, s * a.y};}
  friend bool operator==(const Vec2 &, const Vec2 &) = default;
};

struct Vec3
{
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3 &, const Vec3 &) = default;
};

inline double dot(Vec2 a, Vec2 b) {return a.x * b.x + a.y * b.y;}
inline double norm(Vec2 a) {return std::hypot(a.x, a.y);}
inline double distance(Vec2 a, Vec2 b) {return norm(a - b);}

/// Rotates `v` counter-clockwise by `angle` radians.
inline Vec2 rotate(Vec2 v, double angle)
{
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Wraps an angle into (-pi, pi].
double normalize_angle(double radians);

inline double deg_to_rad(double deg) {return deg * kPi / 180.0;}
inline double rad_to_deg(double rad) {return rad * 180.0 / kPi;}

/// Yaw-rotated rectangle on the ground plane.
struct OrientedRect
{
  Vec2 center;
  Vec2 half_extent;  // along the rectangle's local x/y axes
  double yaw = 0.0;

  /// Corners in counter-clockwise order.
  std::array<Vec2, 4> corners() const;
  bool contains(Vec2 p, double tolerance = 0.0) const;
  /// Euclidean distance from `p` to the rectangle (0 inside).
  double distance_to(Vec2 p) const;
};

/// True when two convex quadrilaterals share a region of positive area.
/// Overlaps thinner than `tolerance` along any separating axis do not count.
bool interiors_overlap(
  const std::array<Vec2, 4> & a, const std::array<Vec2, 4> & b,
  double tolerance);

/// Minimum distance between the boundaries of two rectangles (0 if they touch
/// or overlap).
double rect_distance(const OrientedRect & a, const OrientedRect & b);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

}  // namespace groundnav

#endif  // GROUNDNAV__GEOMETRY_HPP_
