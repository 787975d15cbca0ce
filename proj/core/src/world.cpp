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

#include "groundnav/world.hpp"

#include <algorithm>
#include <set>

#include "groundnav/errors.hpp"

namespace groundnav::world
{

namespace
{
constexpr double kEdgeTolerance = 1e-9;
}  // namespace

const SceneObject * Scene::find(std::string_view name) const
{
  for (const auto & obj : objects) {
    if (obj.name == name) {
      return &obj;
    }
  }
  return nullptr;
}

const SceneObject & Scene::at(std::string_view name) const
{
  const SceneObject * obj = find(name);
  if (obj == nullptr) {
    throw DataError("unknown scene object '" + std::string(name) + "'");
  }
  return *obj;
}

std::optional<std::size_t> Scene::index_of(std::string_view name) const
{
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i].name == name) {
      return i;
    }
  }
  return std::nullopt;
}

void validate(const Scene & scene)
{
  if (!(scene.resolution > 0.0) || !std::isfinite(scene.resolution)) {
    throw DataError("scene resolution must be positive");
  }
  if (!(scene.bounds.min.x < scene.bounds.max.x) || !(scene.bounds.min.y < scene.bounds.max.y)) {
    throw DataError("scene bounds must have min < max on both axes");
  }
  const CameraModel & cam = scene.camera;
  if (!(cam.fov_x > 0.0 && cam.fov_x < kPi) || !(cam.fov_y > 0.0 && cam.fov_y < kPi)) {
    throw DataError("camera field of view must lie in (0, 180) degrees");
  }
  if (cam.width_px < 2 || cam.height_px < 2) {
    throw DataError("camera image must be at least 2x2 pixels");
  }

  std::set<std::string> names;
  for (const auto & obj : scene.objects) {
    if (obj.name.empty()) {
      throw DataError("scene object with empty name");
    }
    if (!names.insert(obj.name).second) {
      throw DataError("duplicate object name '" + obj.name + "'");
    }
    if (!(obj.size.x > 0.0 && obj.size.y > 0.0 && obj.size.z > 0.0)) {
      throw DataError("object '" + obj.name + "' has a non-positive size");
    }
    if (obj.yaw <= -kPi || obj.yaw > kPi) {
      throw DataError("object '" + obj.name + "' yaw is not normalized");
    }
    for (const Vec2 & corner : obj.footprint().corners()) {
      if (!scene.bounds.contains(corner, kEdgeTolerance)) {
        throw DataError("object '" + obj.name + "' footprint leaves the scene bounds");
      }
    }
  }
  for (std::size_t i = 0; i < scene.snapshot_points.size(); ++i) {
    const Pose & p = scene.snapshot_points[i];
    if (!scene.bounds.contains(p.position)) {
      throw DataError("snapshot point " + std::to_string(i) + " lies outside the scene bounds");
    }
    if (p.heading <= -kPi || p.heading > kPi) {
      throw DataError("snapshot point " + std::to_string(i) + " heading is not normalized");
    }
  }
}

OccupancyGrid::OccupancyGrid(int width, int height, double resolution, Vec2 origin)
: width_(width), height_(height), resolution_(resolution), origin_(origin),
  cells_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0)
{
}

Cell OccupancyGrid::cell_of(Vec2 p) const
{
  return {
    static_cast<int>(std::floor((p.y - origin_.y) / resolution_)),
    static_cast<int>(std::floor((p.x - origin_.x) / resolution_))};
}

Vec2 OccupancyGrid::cell_center(Cell c) const
{
  return {origin_.x + (c.col + 0.5) * resolution_, origin_.y + (c.row + 0.5) * resolution_};
}

std::array<Vec2, 4> OccupancyGrid::cell_corners(Cell c) const
{
  const double x0 = origin_.x + c.col * resolution_;
  const double y0 = origin_.y + c.row * resolution_;
  const double x1 = x0 + resolution_;
  const double y1 = y0 + resolution_;
  return {{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

std::size_t OccupancyGrid::occupied_count() const
{
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

OccupancyGrid make_grid(const Bounds & bounds, double resolution)
{
  const auto extent = [resolution](double lo, double hi) {
      return std::max(1, static_cast<int>(std::ceil((hi - lo) / resolution - kEdgeTolerance)));
    };
  return OccupancyGrid(
    extent(bounds.min.x, bounds.max.x), extent(bounds.min.y, bounds.max.y), resolution, bounds.min);
}

std::vector<Cell> rasterize_footprint(const OccupancyGrid & grid, const OrientedRect & rect)
{
  const auto corners = rect.corners();
  double lo_x = corners[0].x, hi_x = corners[0].x, lo_y = corners[0].y, hi_y = corners[0].y;
  for (const Vec2 & c : corners) {
    lo_x = std::min(lo_x, c.x);
    hi_x = std::max(hi_x, c.x);
    lo_y = std::min(lo_y, c.y);
    hi_y = std::max(hi_y, c.y);
  }
  const Cell lo = grid.cell_of({lo_x, lo_y});
  const Cell hi = grid.cell_of({hi_x, hi_y});

  std::vector<Cell> out;
  for (int r = std::max(lo.row, 0); r <= std::min(hi.row, grid.height() - 1); ++r) {
    for (int c = std::max(lo.col, 0); c <= std::min(hi.col, grid.width() - 1); ++c) {
      if (interiors_overlap(corners, grid.cell_corners({r, c}), kEdgeTolerance)) {
        out.push_back({r, c});
      }
    }
  }
  return out;
}

OccupancyGrid rasterize_occupancy(const Scene & scene)
{
  OccupancyGrid grid = make_grid(scene.bounds, scene.resolution);
  for (const auto & obj : scene.objects) {
    for (const Cell & c : rasterize_footprint(grid, obj.footprint())) {
      grid.set_occupied(c);
    }
  }
  return grid;
}

}  // namespace groundnav::world
