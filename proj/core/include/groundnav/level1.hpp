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

#ifndef GROUNDNAV__LEVEL1_HPP_
#define GROUNDNAV__LEVEL1_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "groundnav/sensing.hpp"
#include "groundnav/world.hpp"

namespace groundnav::level1
{

using WorldPoint = Vec2;
using CellSet = std::set<world::Cell>;

/// Sub-pixel image coordinate; integer values are pixel centers.
struct ImagePoint
{
  double x = 0.0;
  double y = 0.0;
};

/// Maps an image point with its ray depth onto the ground plane.
///
/// Azimuth and elevation relative to the optical axis are linear in the pixel
/// offset from the image center (x_c, y_c) = ((w-1)/2, (h-1)/2):
///
///   azimuth   = fov_x / w * (x - x_c)
///   elevation = fov_y / h * (y - y_c)
///   ground    = depth * cos(elevation)
///   result    = pose.position + ground * (cos(azimuth + heading), sin(azimuth + heading))
///
/// Height is dropped. Throws GeometryError for a non-finite or non-positive
/// depth or a point outside the image.
WorldPoint project_pixel(
  ImagePoint pixel, double depth, const world::CameraModel & camera, const world::Pose & pose);

/// Camera pose a snapshot was taken from: robot position, snapshot heading.
inline world::Pose camera_pose(const world::Pose & robot, const sensing::Snapshot & snapshot)
{
  return {robot.position, snapshot.heading};
}

/// Grid cells hit by projecting every mask pixel of `detection`. Points that
/// land outside the grid are dropped. Throws GeometryError on an empty mask or
/// an infinite-depth mask pixel.
CellSet map_object_footprint(
  const sensing::Detection & detection, const sensing::Snapshot & snapshot,
  const world::CameraModel & camera, const world::Pose & robot,
  const world::OccupancyGrid & grid);

/// Average-depth position estimate: the mean mask depth projected through the
/// mask's pixel centroid.
WorldPoint estimate_position(
  const sensing::Detection & detection, const sensing::Snapshot & snapshot,
  const world::CameraModel & camera, const world::Pose & robot);

struct OnlineMap
{
  world::OccupancyGrid base;
  std::map<std::string, CellSet> footprints;
  std::map<std::string, WorldPoint> positions;
  std::map<std::string, std::string> object_names;  // id -> scene object

  /// Free in the base grid and not claimed by any object footprint.
  bool free(world::Cell c) const;
};

/// Footprints are the union over each entry's detections; the position comes
/// from the detection with the largest mask.
OnlineMap build_online_map(
  const std::vector<sensing::ObjectEntry> & entries,
  const std::vector<sensing::Snapshot> & snapshots,
  const world::CameraModel & camera, const world::Pose & robot,
  const world::OccupancyGrid & base);

struct ErrorReport
{
  double mean = 0.0;
  double std = 0.0;  // population
  double min = 0.0;
  double max = 0.0;
  std::map<std::string, double> per_object;
};

/// Distance from each estimated position to its object's footprint centroid.
/// Throws DataError for ids that resolve to no scene object.
ErrorReport analyze_errors(const OnlineMap & online, const world::Scene & scene);

/// Four labelled rows: mean, standard deviation, min and max error in metres.
std::string format_error_table(const ErrorReport & report, const std::string & column = "error");
std::string error_report_json(const ErrorReport & report);

/// Adds zero-mean Gaussian noise to every finite depth, keeping depths
/// positive. `sigma == 0` is a no-op.
void apply_depth_noise(std::vector<sensing::Snapshot> & snapshots, double sigma, std::uint64_t seed);

}  // namespace groundnav::level1

#endif  // GROUNDNAV__LEVEL1_HPP_
