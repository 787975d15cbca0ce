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

#ifndef GROUNDNAV__SENSING_HPP_
#define GROUNDNAV__SENSING_HPP_

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "groundnav/world.hpp"

namespace groundnav::sensing
{

struct Pixel
{
  int x = 0;  // column
  int y = 0;  // row, growing downward

  friend auto operator<=>(const Pixel &, const Pixel &) = default;
};

/// Inclusive pixel bounds.
struct BoundingBox
{
  int x_min = 0;
  int y_min = 0;
  int x_max = -1;
  int y_max = -1;

  bool contains(Pixel p) const
  {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  bool empty() const {return x_max < x_min || y_max < y_min;}

  friend bool operator==(const BoundingBox &, const BoundingBox &) = default;
};

BoundingBox tight_bounds(const std::vector<Pixel> & pixels);

/// One synthetic RGB-D frame. `index` is 1-based.
struct Snapshot
{
  int index = 1;
  double heading = 0.0;  // camera yaw in the map frame
  int width = 0;
  int height = 0;
  std::vector<double> depth;  // row-major, Euclidean ray length, +inf for no hit
  std::vector<int> hit;       // row-major scene object index, -1 for no hit

  double depth_at(Pixel p) const {return depth[offset(p)];}
  std::optional<std::size_t> hit_at(Pixel p) const
  {
    const int h = hit[offset(p)];
    return h < 0 ? std::nullopt : std::optional<std::size_t>(static_cast<std::size_t>(h));
  }
  bool in_image(Pixel p) const {return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height;}

private:
  std::size_t offset(Pixel p) const
  {
    return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(p.x);
  }
};

/// Heading of snapshot `index` (1-based) out of `omega` around `base_heading`.
double snapshot_heading(double base_heading, int index, int omega);

/// Renders one equiangular depth frame at `heading` from `position`.
Snapshot render_snapshot(
  const world::Scene & scene, Vec2 position, double heading, int index);

/// Rotates in place and renders `omega` evenly spaced frames. Throws
/// GeometryError when the pose lies inside an object footprint.
std::vector<Snapshot> take_snapshots(
  const world::Scene & scene, const world::Pose & pose, int omega);

struct Detection
{
  int snapshot_index = 1;
  std::string object_name;
  std::string object_type;
  BoundingBox bbox;
  std::vector<Pixel> mask;  // sorted row-major
};

/// A labelled box before segmentation.
struct BoxProposal
{
  std::string object_name;
  std::string object_type;
  BoundingBox bbox;
};

/// Object detector interface. Implementations must be safe for concurrent
/// calls on distinct snapshots.
class Detector
{
public:
  virtual ~Detector() = default;
  virtual std::vector<BoxProposal> propose(
    const Snapshot & snapshot, const world::Scene & scene) const = 0;
};

/// Segments the object inside a proposal's box.
class Segmenter
{
public:
  virtual ~Segmenter() = default;
  virtual std::vector<Pixel> segment(
    const Snapshot & snapshot, const world::Scene & scene, const BoxProposal & box) const = 0;
};

/// Reads object identity straight from the renderer's hit buffer.
class GroundTruthDetector : public Detector
{
public:
  explicit GroundTruthDetector(int min_pixels = 4) : min_pixels_(min_pixels) {}
  std::vector<BoxProposal> propose(
    const Snapshot & snapshot, const world::Scene & scene) const override;

private:
  int min_pixels_;
};

class GroundTruthSegmenter : public Segmenter
{
public:
  std::vector<Pixel> segment(
    const Snapshot & snapshot, const world::Scene & scene, const BoxProposal & box) const override;
};

std::vector<Detection> detect_objects(
  const Snapshot & snapshot, const world::Scene & scene,
  const Detector & detector, const Segmenter & segmenter);

/// Ground-truth detector and segmenter with the given visibility floor.
std::vector<Detection> detect_objects(
  const Snapshot & snapshot, const world::Scene & scene, int min_pixels = 4);

struct ObjectEntry
{
  std::string id;  // type + ordinal, e.g. "chair7"
  std::string object_name;
  std::string object_type;
  std::vector<Detection> detections;  // ordered by snapshot index

  /// Detection with the largest mask (first one on ties).
  const Detection & best_detection() const;
};

struct DedupOptions
{
  double iou_threshold = 0.5;
};

/// Merges same-type detections of one object seen from neighbouring
/// snapshots.
///
/// Two detections from different snapshots are compared inside the azimuth
/// window both cameras cover: each mask is restricted to the pixels whose ray
/// falls in that window and reduced to an (azimuth x elevation) angular box.
/// Pairs whose box IoU exceeds the threshold are merged greedily from the
/// highest IoU down; a merge never joins two detections from one snapshot.
/// Ids are type + ordinal, ordinals following (snapshot index, bbox x_min) of
/// each entry's first detection.
std::vector<ObjectEntry> deduplicate(
  const std::vector<Detection> & detections, const std::vector<Snapshot> & snapshots,
  const world::CameraModel & camera, const DedupOptions & options = {});

/// Angular IoU used by `deduplicate`. Returns nullopt when the two cameras
/// share no azimuth window or either mask has no pixel inside it.
std::optional<double> shared_view_iou(
  const Detection & a, double heading_a, const Detection & b, double heading_b,
  const world::CameraModel & camera);

struct Annotation
{
  std::string object_id;
  BoundingBox bbox;
  Pixel tag_anchor;
};

struct AnnotatedSnapshot
{
  int snapshot_index = 1;
  std::vector<Annotation> annotations;
};

struct AnnotateOptions
{
  int tag_offset = 7;  // tag strip height above the box
};

std::vector<AnnotatedSnapshot> annotate(
  const std::vector<Snapshot> & snapshots, const std::vector<ObjectEntry> & entries,
  const AnnotateOptions & options = {});

/// Binary P6 raster: white background, silhouettes in depth-graded gray,
/// red box outlines and red tag strips carrying the id in white glyphs.
std::string render_ppm(
  const Snapshot & snapshot, const AnnotatedSnapshot & annotated,
  const AnnotateOptions & options = {});

}  // namespace groundnav::sensing

#endif  // GROUNDNAV__SENSING_HPP_
