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

#ifndef GROUNDNAV__PIPELINE_HPP_
#define GROUNDNAV__PIPELINE_HPP_

#include <cstdint>
#include <vector>

#include "groundnav/level1.hpp"
#include "groundnav/sensing.hpp"
#include "groundnav/world.hpp"

namespace groundnav
{

struct PerceptionOptions
{
  int omega = 8;
  int min_pixels = 4;
  double depth_noise_sigma = 0.0;
  std::uint64_t seed = 0;
  sensing::DedupOptions dedup;
  sensing::AnnotateOptions annotate;
};

/// Everything the robot learns from one 360-degree sweep.
struct Perception
{
  world::Pose pose;
  std::vector<sensing::Snapshot> snapshots;
  std::vector<sensing::Detection> detections;
  std::vector<sensing::ObjectEntry> entries;
  std::vector<sensing::AnnotatedSnapshot> annotated;
  level1::OnlineMap online;

  const sensing::ObjectEntry * entry(const std::string & id) const;
};

/// snapshots -> (noise) -> detect -> deduplicate -> annotate -> online map.
Perception perceive(
  const world::Scene & scene, const world::OccupancyGrid & base, const world::Pose & pose,
  const PerceptionOptions & options = {});

}  // namespace groundnav

#endif  // GROUNDNAV__PIPELINE_HPP_
