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

#include "groundnav/pipeline.hpp"

namespace groundnav
{

const sensing::ObjectEntry * Perception::entry(const std::string & id) const
{
  for (const auto & e : entries) {
    if (e.id == id) {
      return &e;
    }
  }
  return nullptr;
}

Perception perceive(
  const world::Scene & scene, const world::OccupancyGrid & base, const world::Pose & pose,
  const PerceptionOptions & options)
{
  Perception out;
  out.pose = pose;
  out.snapshots = sensing::take_snapshots(scene, pose, options.omega);
  level1::apply_depth_noise(out.snapshots, options.depth_noise_sigma, options.seed);

  const sensing::GroundTruthDetector detector(options.min_pixels);
  const sensing::GroundTruthSegmenter segmenter;
  for (const auto & snap : out.snapshots) {
    auto found = sensing::detect_objects(snap, scene, detector, segmenter);
    out.detections.insert(out.detections.end(), found.begin(), found.end());
  }
  out.entries = sensing::deduplicate(out.detections, out.snapshots, scene.camera, options.dedup);
  out.annotated = sensing::annotate(out.snapshots, out.entries, options.annotate);
  out.online = level1::build_online_map(out.entries, out.snapshots, scene.camera, pose, base);
  return out;
}

}  // namespace groundnav
