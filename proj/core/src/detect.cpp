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

#include <algorithm>
#include <map>

#include "groundnav/sensing.hpp"

namespace groundnav::sensing
{

BoundingBox tight_bounds(const std::vector<Pixel> & pixels)
{
  if (pixels.empty()) {
    return {};
  }
  BoundingBox box{pixels.front().x, pixels.front().y, pixels.front().x, pixels.front().y};
  for (const Pixel & p : pixels) {
    box.x_min = std::min(box.x_min, p.x);
    box.y_min = std::min(box.y_min, p.y);
    box.x_max = std::max(box.x_max, p.x);
    box.y_max = std::max(box.y_max, p.y);
  }
  return box;
}

std::vector<BoxProposal> GroundTruthDetector::propose(
  const Snapshot & snapshot, const world::Scene & scene) const
{
  struct Extent
  {
    BoundingBox box{};
    int count = 0;
  };
  std::map<std::size_t, Extent> seen;
  for (int y = 0; y < snapshot.height; ++y) {
    for (int x = 0; x < snapshot.width; ++x) {
      const auto hit = snapshot.hit_at({x, y});
      if (!hit) {
        continue;
      }
      auto [it, inserted] = seen.try_emplace(*hit);
      Extent & e = it->second;
      if (inserted) {
        e.box = {x, y, x, y};
      } else {
        e.box.x_min = std::min(e.box.x_min, x);
        e.box.y_min = std::min(e.box.y_min, y);
        e.box.x_max = std::max(e.box.x_max, x);
        e.box.y_max = std::max(e.box.y_max, y);
      }
      ++e.count;
    }
  }

  std::vector<BoxProposal> out;
  for (const auto & [index, extent] : seen) {
    if (extent.count < min_pixels_) {
      continue;
    }
    const auto & obj = scene.objects.at(index);
    out.push_back({obj.name, obj.type, extent.box});
  }
  std::sort(out.begin(), out.end(), [](const BoxProposal & a, const BoxProposal & b) {
      if (a.bbox.x_min != b.bbox.x_min) {
        return a.bbox.x_min < b.bbox.x_min;
      }
      return a.object_name < b.object_name;
    });
  return out;
}

std::vector<Pixel> GroundTruthSegmenter::segment(
  const Snapshot & snapshot, const world::Scene & scene, const BoxProposal & box) const
{
  const auto target = scene.index_of(box.object_name);
  std::vector<Pixel> mask;
  if (!target) {
    return mask;
  }
  for (int y = std::max(box.bbox.y_min, 0); y <= std::min(box.bbox.y_max, snapshot.height - 1); ++y) {
    for (int x = std::max(box.bbox.x_min, 0); x <= std::min(box.bbox.x_max, snapshot.width - 1); ++x) {
      if (snapshot.hit_at({x, y}) == target) {
        mask.push_back({x, y});
      }
    }
  }
  return mask;
}

std::vector<Detection> detect_objects(
  const Snapshot & snapshot, const world::Scene & scene,
  const Detector & detector, const Segmenter & segmenter)
{
  std::vector<Detection> out;
  for (const BoxProposal & box : detector.propose(snapshot, scene)) {
    std::vector<Pixel> mask = segmenter.segment(snapshot, scene, box);
    std::erase_if(mask, [&](const Pixel & p) {
        return !box.bbox.contains(p) || !snapshot.in_image(p);
      });
    if (mask.empty()) {
      continue;
    }
    std::sort(mask.begin(), mask.end(), [](const Pixel & a, const Pixel & b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
      });
    out.push_back({snapshot.index, box.object_name, box.object_type, box.bbox, std::move(mask)});
  }
  return out;
}

std::vector<Detection> detect_objects(
  const Snapshot & snapshot, const world::Scene & scene, int min_pixels)
{
  return detect_objects(snapshot, scene, GroundTruthDetector(min_pixels), GroundTruthSegmenter());
}

const Detection & ObjectEntry::best_detection() const
{
  const Detection * best = &detections.front();
  for (const Detection & d : detections) {
    if (d.mask.size() > best->mask.size()) {
      best = &d;
    }
  }
  return *best;
}

}  // namespace groundnav::sensing
