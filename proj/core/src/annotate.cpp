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
#include <array>
#include <cstdint>
#include <string>

#include "groundnav/sensing.hpp"

namespace groundnav::sensing
{

namespace
{

constexpr int kGlyphWidth = 3;
constexpr int kGlyphHeight = 5;

using Glyph = std::array<std::uint8_t, kGlyphHeight>;

// 3x5 bitmap glyphs, most significant of the three bits is the left column.
Glyph glyph(char c)
{
  switch (c) {
    case '0': return {0b111, 0b101, 0b101, 0b101, 0b111};
    case '1': return {0b010, 0b110, 0b010, 0b010, 0b111};
    case '2': return {0b111, 0b001, 0b111, 0b100, 0b111};
    case '3': return {0b111, 0b001, 0b111, 0b001, 0b111};
    case '4': return {0b101, 0b101, 0b111, 0b001, 0b001};
    case '5': return {0b111, 0b100, 0b111, 0b001, 0b111};
    case '6': return {0b111, 0b100, 0b111, 0b101, 0b111};
    case '7': return {0b111, 0b001, 0b001, 0b001, 0b001};
    case '8': return {0b111, 0b101, 0b111, 0b101, 0b111};
    case '9': return {0b111, 0b101, 0b111, 0b001, 0b111};
    case 'a': return {0b010, 0b101, 0b111, 0b101, 0b101};
    case 'b': return {0b110, 0b101, 0b110, 0b101, 0b110};
    case 'c': return {0b011, 0b100, 0b100, 0b100, 0b011};
    case 'd': return {0b110, 0b101, 0b101, 0b101, 0b110};
    case 'e': return {0b111, 0b100, 0b110, 0b100, 0b111};
    case 'f': return {0b111, 0b100, 0b110, 0b100, 0b100};
    case 'g': return {0b011, 0b100, 0b101, 0b101, 0b011};
    case 'h': return {0b101, 0b101, 0b111, 0b101, 0b101};
    case 'i': return {0b111, 0b010, 0b010, 0b010, 0b111};
    case 'j': return {0b001, 0b001, 0b001, 0b101, 0b010};
    case 'k': return {0b101, 0b101, 0b110, 0b101, 0b101};
    case 'l': return {0b100, 0b100, 0b100, 0b100, 0b111};
    case 'm': return {0b101, 0b111, 0b111, 0b101, 0b101};
    case 'n': return {0b110, 0b101, 0b101, 0b101, 0b101};
    case 'o': return {0b010, 0b101, 0b101, 0b101, 0b010};
    case 'p': return {0b110, 0b101, 0b110, 0b100, 0b100};
    case 'q': return {0b010, 0b101, 0b101, 0b110, 0b011};
    case 'r': return {0b110, 0b101, 0b110, 0b101, 0b101};
    case 's': return {0b011, 0b100, 0b010, 0b001, 0b110};
    case 't': return {0b111, 0b010, 0b010, 0b010, 0b010};
    case 'u': return {0b101, 0b101, 0b101, 0b101, 0b111};
    case 'v': return {0b101, 0b101, 0b101, 0b101, 0b010};
    case 'w': return {0b101, 0b101, 0b111, 0b111, 0b101};
    case 'x': return {0b101, 0b101, 0b010, 0b101, 0b101};
    case 'y': return {0b101, 0b101, 0b010, 0b010, 0b010};
    case 'z': return {0b111, 0b001, 0b010, 0b100, 0b111};
    case '_': return {0b000, 0b000, 0b000, 0b000, 0b111};
    case '-': return {0b000, 0b000, 0b111, 0b000, 0b000};
    default: return {0b111, 0b111, 0b111, 0b111, 0b111};
  }
}

class Canvas
{
public:
  Canvas(int w, int h) : w_(w), h_(h), rgb_(static_cast<std::size_t>(w * h * 3), 255) {}

  void put(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b)
  {
    if (x < 0 || y < 0 || x >= w_ || y >= h_) {
      return;
    }
    const std::size_t k = static_cast<std::size_t>((y * w_ + x) * 3);
    rgb_[k] = r;
    rgb_[k + 1] = g;
    rgb_[k + 2] = b;
  }

  std::string encode() const
  {
    std::string out = "P6\n" + std::to_string(w_) + " " + std::to_string(h_) + "\n255\n";
    out.append(rgb_.begin(), rgb_.end());
    return out;
  }

private:
  int w_;
  int h_;
  std::vector<std::uint8_t> rgb_;
};

std::uint8_t gray_for_depth(double depth)
{
  // Near surfaces dark, far ones light; saturates at 10 m.
  const double t = std::clamp(depth / 10.0, 0.0, 1.0);
  return static_cast<std::uint8_t>(60.0 + 150.0 * t);
}

}  // namespace

std::vector<AnnotatedSnapshot> annotate(
  const std::vector<Snapshot> & snapshots, const std::vector<ObjectEntry> & entries,
  const AnnotateOptions & options)
{
  std::vector<AnnotatedSnapshot> out;
  for (const Snapshot & snap : snapshots) {
    AnnotatedSnapshot annotated{snap.index, {}};
    for (const ObjectEntry & entry : entries) {
      for (const Detection & det : entry.detections) {
        if (det.snapshot_index != snap.index) {
          continue;
        }
        const Pixel anchor{
          std::clamp(det.bbox.x_min, 0, snap.width - 1),
          std::clamp(det.bbox.y_min - options.tag_offset, 0, snap.height - 1)};
        annotated.annotations.push_back({entry.id, det.bbox, anchor});
      }
    }
    out.push_back(std::move(annotated));
  }
  return out;
}

std::string render_ppm(
  const Snapshot & snapshot, const AnnotatedSnapshot & annotated, const AnnotateOptions & options)
{
  Canvas canvas(snapshot.width, snapshot.height);
  for (int y = 0; y < snapshot.height; ++y) {
    for (int x = 0; x < snapshot.width; ++x) {
      const double d = snapshot.depth_at({x, y});
      if (std::isfinite(d)) {
        const std::uint8_t g = gray_for_depth(d);
        canvas.put(x, y, g, g, g);
      }
    }
  }

  for (const Annotation & a : annotated.annotations) {
    const BoundingBox & b = a.bbox;
    for (int x = b.x_min; x <= b.x_max; ++x) {
      canvas.put(x, b.y_min, 255, 0, 0);
      canvas.put(x, b.y_max, 255, 0, 0);
    }
    for (int y = b.y_min; y <= b.y_max; ++y) {
      canvas.put(b.x_min, y, 255, 0, 0);
      canvas.put(b.x_max, y, 255, 0, 0);
    }

    const int strip_w = static_cast<int>(a.object_id.size()) * (kGlyphWidth + 1) + 1;
    const int strip_h = std::max(options.tag_offset, kGlyphHeight + 2);
    for (int y = a.tag_anchor.y; y < a.tag_anchor.y + strip_h; ++y) {
      for (int x = a.tag_anchor.x; x < a.tag_anchor.x + strip_w; ++x) {
        canvas.put(x, y, 255, 0, 0);
      }
    }
    int pen_x = a.tag_anchor.x + 1;
    const int pen_y = a.tag_anchor.y + (strip_h - kGlyphHeight) / 2;
    for (char c : a.object_id) {
      const Glyph g = glyph(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      for (int row = 0; row < kGlyphHeight; ++row) {
        for (int col = 0; col < kGlyphWidth; ++col) {
          if (g[static_cast<std::size_t>(row)] & (1u << (kGlyphWidth - 1 - col))) {
            canvas.put(pen_x + col, pen_y + row, 255, 255, 255);
          }
        }
      }
      pen_x += kGlyphWidth + 1;
    }
  }
  return canvas.encode();
}

}  // namespace groundnav::sensing
