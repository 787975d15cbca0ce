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

#ifndef GROUNDNAV__WORLD_HPP_
#define GROUNDNAV__WORLD_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "groundnav/geometry.hpp"

namespace groundnav::world
{

inline constexpr double kDefaultResolution = 0.05;

/// Equiangular RGB-D camera. Angles in radians.
struct CameraModel
{
  double fov_x = deg_to_rad(90.0);
  double fov_y = deg_to_rad(60.0);
  int width_px = 160;
  int height_px = 120;
  double mount_height = 1.0;

  double center_x() const {return (width_px - 1) / 2.0;}
  double center_y() const {return (height_px - 1) / 2.0;}
  /// Angle subtended by one pixel column / row.
  double pixel_azimuth() const {return fov_x / width_px;}
  double pixel_elevation() const {return fov_y / height_px;}
};

struct Pose
{
  Vec2 position;
  double heading = 0.0;  // radians, (-pi, pi]
};

/// A yaw-rotated 3-D box standing in for a physical object.
struct SceneObject
{
  std::string name;
  std::string type;
  std::map<std::string, std::string> attributes;
  Vec3 center;
  Vec3 size;
  double yaw = 0.0;

  Vec2 ground_center() const {return {center.x, center.y};}
  OrientedRect footprint() const
  {
    return {ground_center(), {size.x / 2.0, size.y / 2.0}, yaw};
  }
};

struct Bounds
{
  Vec2 min;
  Vec2 max;

  bool contains(Vec2 p, double tolerance = 0.0) const
  {
    return p.x >= min.x - tolerance && p.x <= max.x + tolerance &&
           p.y >= min.y - tolerance && p.y <= max.y + tolerance;
  }
};

struct Scene
{
  Bounds bounds;
  double resolution = kDefaultResolution;
  CameraModel camera;
  std::vector<SceneObject> objects;
  std::vector<Pose> snapshot_points;

  const SceneObject * find(std::string_view name) const;
  const SceneObject & at(std::string_view name) const;  // throws DataError
  std::optional<std::size_t> index_of(std::string_view name) const;
};

/// Throws DataError naming the first violated invariant.
void validate(const Scene & scene);

/// Parses a scene document. Throws DataError with line/column context on
/// malformed input and on invariant violations.
Scene load_scene(std::string_view text);
Scene load_scene_file(const std::string & path);
std::string serialize_scene(const Scene & scene);

/// Field-wise comparison with an absolute tolerance on every real value.
bool equivalent(const Scene & a, const Scene & b, double tolerance = 1e-9);

struct Cell
{
  int row = 0;  // along y
  int col = 0;  // along x

  friend auto operator<=>(const Cell &, const Cell &) = default;
};

class OccupancyGrid
{
public:
  OccupancyGrid() = default;
  OccupancyGrid(int width, int height, double resolution, Vec2 origin);

  int width() const {return width_;}
  int height() const {return height_;}
  double resolution() const {return resolution_;}
  Vec2 origin() const {return origin_;}

  bool in_bounds(Cell c) const
  {
    return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_;
  }
  bool occupied(Cell c) const {return cells_[index(c)] != 0;}
  bool free(Cell c) const {return in_bounds(c) && cells_[index(c)] == 0;}
  void set_occupied(Cell c, bool value = true) {cells_[index(c)] = value ? 1 : 0;}

  /// Cell containing a world point (may be out of bounds).
  Cell cell_of(Vec2 p) const;
  Vec2 cell_center(Cell c) const;
  /// Cell square corners in counter-clockwise order.
  std::array<Vec2, 4> cell_corners(Cell c) const;

  std::size_t occupied_count() const;
  const std::vector<std::uint8_t> & cells() const {return cells_;}

  friend bool operator==(const OccupancyGrid &, const OccupancyGrid &) = default;

private:
  std::size_t index(Cell c) const
  {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }

  int width_ = 0;
  int height_ = 0;
  double resolution_ = kDefaultResolution;
  Vec2 origin_;
  std::vector<std::uint8_t> cells_;
};

/// Empty grid covering `bounds` with cell (0,0) at `bounds.min`.
OccupancyGrid make_grid(const Bounds & bounds, double resolution);

/// Cells whose square shares positive area (beyond 1e-9 m) with `rect`.
std::vector<Cell> rasterize_footprint(const OccupancyGrid & grid, const OrientedRect & rect);

/// Offline occupancy map: union of every object's rasterized footprint.
OccupancyGrid rasterize_occupancy(const Scene & scene);

}  // namespace groundnav::world

#endif  // GROUNDNAV__WORLD_HPP_
