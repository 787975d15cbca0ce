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

#include "groundnav/mission.hpp"

namespace groundnav::mission
{

Mission build_mission(
  const grounding::MissionDraft & draft, const std::string & resolved_id,
  const level1::OnlineMap & online, const world::Pose & pose, const std::string & mission_id)
{
  const auto it = online.footprints.find(resolved_id);
  if (it == online.footprints.end() || it->second.empty()) {
    throw DataError("object '" + resolved_id + "' has no footprint in the online map");
  }
  const level1::CellSet & footprint = it->second;
  std::optional<Cell> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (const Cell & f : footprint) {
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const Cell n{f.row + dr, f.col + dc};
        if (footprint.count(n) != 0 || !online.free(n)) {
          continue;
        }
        const double d = distance(online.base.cell_center(n), pose.position);
        if (!best || d < best_d - 1e-12 || (d <= best_d + 1e-12 && n < *best)) {
          best_d = std::min(best_d, d);
          best = n;
        }
      }
    }
  }
  if (!best) {
    throw UnreachableError("object '" + resolved_id + "' has no free neighbouring cell");
  }
  Mission m;
  m.id = mission_id;
  m.scheduled_time = draft.time;
  m.target_object_id = resolved_id;
  m.target_cell = *best;
  m.action = draft.action;
  return m;
}

}  // namespace groundnav::mission
