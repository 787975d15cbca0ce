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

#include "groundnav/level1.hpp"

#include <cstdio>
#include <random>

#include "json.hpp"

#include "groundnav/errors.hpp"

namespace groundnav::level1
{

WorldPoint project_pixel(
  ImagePoint pixel, double depth, const world::CameraModel & camera, const world::Pose & pose)
{
  if (!std::isfinite(depth) || depth <= 0.0) {
    throw GeometryError("projection needs a finite positive depth");
  }
  if (pixel.x < -0.5 || pixel.x > camera.width_px - 0.5 ||
    pixel.y < -0.5 || pixel.y > camera.height_px - 0.5)
  {
    throw GeometryError("projection pixel lies outside the image");
  }
  const double azimuth = camera.fov_x / camera.width_px * (pixel.x - camera.center_x());
  const double elevation = camera.fov_y / camera.height_px * (pixel.y - camera.center_y());
  const double ground = depth * std::cos(elevation);
  const double bearing = normalize_angle(azimuth + pose.heading);
  return pose.position + WorldPoint{ground * std::cos(bearing), ground * std::sin(bearing)};
}

namespace
{

void require_projectable(const sensing::Detection & detection, const sensing::Snapshot & snapshot)
{
  if (detection.mask.empty()) {
    throw GeometryError("detection of '" + detection.object_name + "' has an empty mask");
  }
  for (const sensing::Pixel & p : detection.mask) {
    if (!std::isfinite(snapshot.depth_at(p))) {
      throw GeometryError(
              "mask pixel (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") of '" +
              detection.object_name + "' has no depth");
    }
  }
}

}  // namespace

CellSet map_object_footprint(
  const sensing::Detection & detection, const sensing::Snapshot & snapshot,
  const world::CameraModel & camera, const world::Pose & robot,
  const world::OccupancyGrid & grid)
{
  require_projectable(detection, snapshot);
  const world::Pose pose = camera_pose(robot, snapshot);
  CellSet cells;
  for (const sensing::Pixel & p : detection.mask) {
    const WorldPoint w = project_pixel(
      {static_cast<double>(p.x), static_cast<double>(p.y)}, snapshot.depth_at(p), camera, pose);
    const world::Cell c = grid.cell_of(w);
    if (grid.in_bounds(c)) {
      cells.insert(c);
    }
  }
  return cells;
}

WorldPoint estimate_position(
  const sensing::Detection & detection, const sensing::Snapshot & snapshot,
  const world::CameraModel & camera, const world::Pose & robot)
{
  require_projectable(detection, snapshot);
  double sum_depth = 0.0;
  double sum_x = 0.0;
  double sum_y = 0.0;
  for (const sensing::Pixel & p : detection.mask) {
    sum_depth += snapshot.depth_at(p);
    sum_x += p.x;
    sum_y += p.y;
  }
  const double n = static_cast<double>(detection.mask.size());
  return project_pixel({sum_x / n, sum_y / n}, sum_depth / n, camera, camera_pose(robot, snapshot));
}

bool OnlineMap::free(world::Cell c) const
{
  if (!base.free(c)) {
    return false;
  }
  for (const auto & [id, cells] : footprints) {
    if (cells.count(c) != 0) {
      return false;
    }
  }
  return true;
}

OnlineMap build_online_map(
  const std::vector<sensing::ObjectEntry> & entries,
  const std::vector<sensing::Snapshot> & snapshots,
  const world::CameraModel & camera, const world::Pose & robot,
  const world::OccupancyGrid & base)
{
  std::map<int, const sensing::Snapshot *> by_index;
  for (const auto & s : snapshots) {
    by_index[s.index] = &s;
  }
  const auto snapshot_of = [&](const sensing::Detection & d) -> const sensing::Snapshot & {
      const auto it = by_index.find(d.snapshot_index);
      if (it == by_index.end()) {
        throw DataError("detection refers to unknown snapshot " + std::to_string(d.snapshot_index));
      }
      return *it->second;
    };

  OnlineMap online;
  online.base = base;
  for (const auto & entry : entries) {
    CellSet & cells = online.footprints[entry.id];
    for (const auto & det : entry.detections) {
      const CellSet part = map_object_footprint(det, snapshot_of(det), camera, robot, base);
      cells.insert(part.begin(), part.end());
    }
    const auto & best = entry.best_detection();
    online.positions[entry.id] = estimate_position(best, snapshot_of(best), camera, robot);
    online.object_names[entry.id] = entry.object_name;
  }
  return online;
}

ErrorReport analyze_errors(const OnlineMap & online, const world::Scene & scene)
{
  ErrorReport report;
  for (const auto & [id, position] : online.positions) {
    const auto name = online.object_names.find(id);
    if (name == online.object_names.end() || scene.find(name->second) == nullptr) {
      throw DataError("online map id '" + id + "' does not resolve to a scene object");
    }
    report.per_object[id] = distance(position, scene.at(name->second).ground_center());
  }
  if (report.per_object.empty()) {
    return report;
  }
  const double n = static_cast<double>(report.per_object.size());
  double sum = 0.0;
  report.min = std::numeric_limits<double>::infinity();
  report.max = 0.0;
  for (const auto & [id, e] : report.per_object) {
    sum += e;
    report.min = std::min(report.min, e);
    report.max = std::max(report.max, e);
  }
  report.mean = sum / n;
  double var = 0.0;
  for (const auto & [id, e] : report.per_object) {
    var += (e - report.mean) * (e - report.mean);
  }
  report.std = std::sqrt(var / n);
  return report;
}

namespace
{

struct Row
{
  const char * label;
  double value;
};

std::array<Row, 4> rows_of(const ErrorReport & r)
{
  return {{
    {"Mean Error (m)", r.mean},
    {"Standard Deviation (m)", r.std},
    {"Min Error (m)", r.min},
    {"Max Error (m)", r.max}}};
}

}  // namespace

std::string format_error_table(const ErrorReport & report, const std::string & column)
{
  std::string out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-24s %s\n", "", column.c_str());
  out += line;
  for (const Row & row : rows_of(report)) {
    std::snprintf(line, sizeof(line), "%-24s %.3f\n", row.label, row.value);
    out += line;
  }
  return out;
}

std::string error_report_json(const ErrorReport & report)
{
  nlohmann::ordered_json doc;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const Row & row : rows_of(report)) {
    doc["rows"].push_back({{"label", row.label}, {"value", row.value}});
  }
  doc["per_object"] = nlohmann::ordered_json::object();
  for (const auto & [id, e] : report.per_object) {
    doc["per_object"][id] = e;
  }
  return doc.dump(2) + "\n";
}

void apply_depth_noise(std::vector<sensing::Snapshot> & snapshots, double sigma, std::uint64_t seed)
{
  if (sigma <= 0.0) {
    return;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (auto & snap : snapshots) {
    for (double & d : snap.depth) {
      if (std::isfinite(d)) {
        d = std::max(d + noise(rng), 1e-6);
      }
    }
  }
}

}  // namespace groundnav::level1
