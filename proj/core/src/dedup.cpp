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
#include <numeric>
#include <set>

#include "groundnav/errors.hpp"
#include "groundnav/sensing.hpp"

namespace groundnav::sensing
{

namespace
{

constexpr double kWindowEpsilon = 1e-9;

struct AngularBox
{
  double az_lo = std::numeric_limits<double>::infinity();
  double az_hi = -std::numeric_limits<double>::infinity();
  double el_lo = std::numeric_limits<double>::infinity();
  double el_hi = -std::numeric_limits<double>::infinity();

  bool empty() const {return !(az_lo < az_hi && el_lo < el_hi);}
  double area() const {return empty() ? 0.0 : (az_hi - az_lo) * (el_hi - el_lo);}
};

/// Angular extent of the mask pixels whose ray azimuth (relative to the
/// reference camera, after adding `offset`) falls in [lo, hi].
AngularBox window_box(
  const Detection & det, double offset, double lo, double hi, const world::CameraModel & cam)
{
  const double half_az = cam.pixel_azimuth() / 2.0;
  const double half_el = cam.pixel_elevation() / 2.0;
  AngularBox box;
  for (const Pixel & p : det.mask) {
    const double az = offset + cam.pixel_azimuth() * (p.x - cam.center_x());
    if (az < lo - kWindowEpsilon || az > hi + kWindowEpsilon) {
      continue;
    }
    const double el = cam.pixel_elevation() * (p.y - cam.center_y());
    box.az_lo = std::min(box.az_lo, az - half_az);
    box.az_hi = std::max(box.az_hi, az + half_az);
    box.el_lo = std::min(box.el_lo, el - half_el);
    box.el_hi = std::max(box.el_hi, el + half_el);
  }
  box.az_lo = std::max(box.az_lo, lo);
  box.az_hi = std::min(box.az_hi, hi);
  return box;
}

class DisjointSets
{
public:
  explicit DisjointSets(std::size_t n) : parent_(n) {std::iota(parent_.begin(), parent_.end(), 0);}

  std::size_t find(std::size_t i)
  {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  void join(std::size_t keep, std::size_t absorb) {parent_[find(absorb)] = find(keep);}

private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::optional<double> shared_view_iou(
  const Detection & a, double heading_a, const Detection & b, double heading_b,
  const world::CameraModel & camera)
{
  const double delta = normalize_angle(heading_b - heading_a);
  const double half_fov = camera.fov_x / 2.0;
  const double lo = std::max(-half_fov, delta - half_fov);
  const double hi = std::min(half_fov, delta + half_fov);
  if (hi - lo <= kWindowEpsilon) {
    return std::nullopt;
  }
  const AngularBox box_a = window_box(a, 0.0, lo, hi, camera);
  const AngularBox box_b = window_box(b, delta, lo, hi, camera);
  if (box_a.empty() || box_b.empty()) {
    return std::nullopt;
  }
  AngularBox inter;
  inter.az_lo = std::max(box_a.az_lo, box_b.az_lo);
  inter.az_hi = std::min(box_a.az_hi, box_b.az_hi);
  inter.el_lo = std::max(box_a.el_lo, box_b.el_lo);
  inter.el_hi = std::min(box_a.el_hi, box_b.el_hi);
  const double overlap = inter.area();
  return overlap / (box_a.area() + box_b.area() - overlap);
}

std::vector<ObjectEntry> deduplicate(
  const std::vector<Detection> & detections, const std::vector<Snapshot> & snapshots,
  const world::CameraModel & camera, const DedupOptions & options)
{
  std::map<int, double> heading_of;
  for (const Snapshot & s : snapshots) {
    heading_of[s.index] = s.heading;
  }
  const auto heading = [&](const Detection & d) {
      const auto it = heading_of.find(d.snapshot_index);
      if (it == heading_of.end()) {
        throw DataError("detection refers to unknown snapshot " + std::to_string(d.snapshot_index));
      }
      return it->second;
    };

  struct Edge
  {
    double iou;
    std::size_t a;
    std::size_t b;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    for (std::size_t j = i + 1; j < detections.size(); ++j) {
      const Detection & a = detections[i];
      const Detection & b = detections[j];
      if (a.snapshot_index == b.snapshot_index || a.object_type != b.object_type) {
        continue;
      }
      const auto iou = shared_view_iou(a, heading(a), b, heading(b), camera);
      if (iou && *iou > options.iou_threshold) {
        edges.push_back({*iou, i, j});
      }
    }
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge & x, const Edge & y) {
      return x.iou > y.iou;
    });

  DisjointSets sets(detections.size());
  std::vector<std::set<int>> frames(detections.size());
  for (std::size_t i = 0; i < detections.size(); ++i) {
    frames[i].insert(detections[i].snapshot_index);
  }
  for (const Edge & e : edges) {
    const std::size_t ra = sets.find(e.a);
    const std::size_t rb = sets.find(e.b);
    if (ra == rb) {
      continue;
    }
    const bool clash = std::any_of(frames[rb].begin(), frames[rb].end(), [&](int s) {
        return frames[ra].count(s) != 0;
      });
    if (clash) {
      continue;
    }
    sets.join(ra, rb);
    frames[ra].insert(frames[rb].begin(), frames[rb].end());
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    groups[sets.find(i)].push_back(i);
  }

  const auto first_seen = [](const Detection & x, const Detection & y) {
      if (x.snapshot_index != y.snapshot_index) {
        return x.snapshot_index < y.snapshot_index;
      }
      if (x.bbox.x_min != y.bbox.x_min) {
        return x.bbox.x_min < y.bbox.x_min;
      }
      return x.object_name < y.object_name;
    };

  std::vector<ObjectEntry> entries;
  for (auto & [root, members] : groups) {
    ObjectEntry entry;
    for (std::size_t m : members) {
      entry.detections.push_back(detections[m]);
    }
    std::sort(entry.detections.begin(), entry.detections.end(), first_seen);
    entry.object_name = entry.detections.front().object_name;
    entry.object_type = entry.detections.front().object_type;
    entries.push_back(std::move(entry));
  }
  std::sort(entries.begin(), entries.end(), [&](const ObjectEntry & x, const ObjectEntry & y) {
      return first_seen(x.detections.front(), y.detections.front());
    });

  std::map<std::string, int> ordinal;
  for (ObjectEntry & entry : entries) {
    entry.id = entry.object_type + std::to_string(++ordinal[entry.object_type]);
  }
  return entries;
}

}  // namespace groundnav::sensing
