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

#include <limits>

#include "groundnav/errors.hpp"
#include "groundnav/sensing.hpp"

namespace groundnav::sensing
{

namespace
{

struct BoxFrame
{
  Vec3 center;
  Vec3 half;
  double cos_yaw;
  double sin_yaw;
};

/// Entry distance of a unit ray into a yaw-rotated box, or +inf.
double intersect(const BoxFrame & box, const Vec3 & origin, const Vec3 & dir)
{
  // Express the ray in the box frame (rotation by -yaw about z).
  const double ox = origin.x - box.center.x;
  const double oy = origin.y - box.center.y;
  const double o[3] = {
    box.cos_yaw * ox + box.sin_yaw * oy,
    -box.sin_yaw * ox + box.cos_yaw * oy,
    origin.z - box.center.z};
  const double d[3] = {
    box.cos_yaw * dir.x + box.sin_yaw * dir.y,
    -box.sin_yaw * dir.x + box.cos_yaw * dir.y,
    dir.z};
  const double h[3] = {box.half.x, box.half.y, box.half.z};

  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 3; ++axis) {
    if (d[axis] == 0.0) {
      if (o[axis] < -h[axis] || o[axis] > h[axis]) {
        return std::numeric_limits<double>::infinity();
      }
      continue;
    }
    double t0 = (-h[axis] - o[axis]) / d[axis];
    double t1 = (h[axis] - o[axis]) / d[axis];
    if (t0 > t1) {
      std::swap(t0, t1);
    }
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
  }
  if (t_near > t_far || t_near <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return t_near;
}

}  // namespace

double snapshot_heading(double base_heading, int index, int omega)
{
  return normalize_angle(base_heading + (index - 1) * 2.0 * kPi / omega);
}

Snapshot render_snapshot(
  const world::Scene & scene, Vec2 position, double heading, int index)
{
  const world::CameraModel & cam = scene.camera;
  std::vector<BoxFrame> boxes;
  boxes.reserve(scene.objects.size());
  for (const auto & obj : scene.objects) {
    boxes.push_back({
        obj.center, {obj.size.x / 2.0, obj.size.y / 2.0, obj.size.z / 2.0},
        std::cos(obj.yaw), std::sin(obj.yaw)});
  }

  Snapshot snap;
  snap.index = index;
  snap.heading = heading;
  snap.width = cam.width_px;
  snap.height = cam.height_px;
  const std::size_t n = static_cast<std::size_t>(cam.width_px) * static_cast<std::size_t>(cam.height_px);
  snap.depth.assign(n, std::numeric_limits<double>::infinity());
  snap.hit.assign(n, -1);

  const Vec3 origin{position.x, position.y, cam.mount_height};
  std::vector<double> cos_az(static_cast<std::size_t>(cam.width_px));
  std::vector<double> sin_az(cos_az.size());
  for (int x = 0; x < cam.width_px; ++x) {
    const double az = heading + cam.pixel_azimuth() * (x - cam.center_x());
    cos_az[static_cast<std::size_t>(x)] = std::cos(az);
    sin_az[static_cast<std::size_t>(x)] = std::sin(az);
  }

  std::size_t k = 0;
  for (int y = 0; y < cam.height_px; ++y) {
    // Elevation grows downward in image rows.
    const double elev = cam.pixel_elevation() * (y - cam.center_y());
    const double horiz = std::cos(elev);
    const double dz = -std::sin(elev);
    for (int x = 0; x < cam.width_px; ++x, ++k) {
      const Vec3 dir{
        horiz * cos_az[static_cast<std::size_t>(x)],
        horiz * sin_az[static_cast<std::size_t>(x)], dz};
      double best = std::numeric_limits<double>::infinity();
      int best_obj = -1;
      for (std::size_t i = 0; i < boxes.size(); ++i) {
        const double t = intersect(boxes[i], origin, dir);
        if (t < best) {
          best = t;
          best_obj = static_cast<int>(i);
        }
      }
      snap.depth[k] = best;
      snap.hit[k] = best_obj;
    }
  }
  return snap;
}

std::vector<Snapshot> take_snapshots(
  const world::Scene & scene, const world::Pose & pose, int omega)
{
  if (omega < 1) {
    throw ConfigError("snapshot count must be at least 1");
  }
  for (const auto & obj : scene.objects) {
    if (obj.footprint().contains(pose.position)) {
      throw GeometryError("pose lies inside the footprint of object '" + obj.name + "'");
    }
  }
  std::vector<Snapshot> out;
  out.reserve(static_cast<std::size_t>(omega));
  for (int i = 1; i <= omega; ++i) {
    out.push_back(render_snapshot(scene, pose.position, snapshot_heading(pose.heading, i, omega), i));
  }
  return out;
}

}  // namespace groundnav::sensing
