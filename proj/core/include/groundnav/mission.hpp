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

#ifndef GROUNDNAV__MISSION_HPP_
#define GROUNDNAV__MISSION_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "groundnav/grounding.hpp"
#include "groundnav/level1.hpp"
#include "groundnav/world.hpp"

namespace groundnav::mission
{

using world::Cell;
using world::OccupancyGrid;

struct Mission
{
  std::string id;
  double scheduled_time = 0.0;  // seconds; 0 = immediate
  std::string target_object_id;
  Cell target_cell;
  std::string action;

  bool immediate() const {return scheduled_time <= 0.0;}
};

/// Approach cell for `resolved_id`: the free cell 8-adjacent to its footprint
/// closest to the robot, ties to the lowest (row, col). Throws
/// UnreachableError when every neighbouring cell is blocked and DataError when
/// the id has no footprint.
Mission build_mission(
  const grounding::MissionDraft & draft, const std::string & resolved_id,
  const level1::OnlineMap & online, const world::Pose & pose, const std::string & mission_id);

struct Path
{
  std::vector<Cell> cells;
  double cost = 0.0;
};

/// Marks every cell whose center lies within `radius` metres of an occupied
/// cell's center as occupied.
OccupancyGrid inflate(const OccupancyGrid & grid, double radius);

/// Shortest 8-connected path, unit straight and sqrt(2) diagonal steps, no
/// diagonal squeeze between two blocked cells. Throws GroundingError when
/// start or goal is blocked and UnreachableError when no path exists.
Path plan_path(const OccupancyGrid & grid, Cell start, Cell goal);

double path_cost(const std::vector<Cell> & cells);

/// Checks the path invariants cell by cell; returns an empty string when valid.
std::string check_path(const OccupancyGrid & grid, const Path & path, Cell start, Cell goal);

/// Text overlay: '#' occupied, '.' free, '*' path, 'S'/'G' endpoints and
/// 'o' marked cells. Row 0 is printed last so +y points up.
std::string render_overlay(
  const OccupancyGrid & grid, const std::vector<Cell> & path = {},
  const std::vector<Cell> & marked = {});

/// Immediate missions first (FIFO), then due scheduled missions by time,
/// FIFO among equal times. Safe for concurrent use.
class Scheduler
{
public:
  void submit(Mission mission);
  std::optional<Mission> next_due(double now);
  std::size_t size() const;

private:
  mutable std::mutex mutex_;
  std::deque<Mission> immediate_;
  std::multimap<std::pair<double, std::uint64_t>, Mission> scheduled_;
  std::uint64_t sequence_ = 0;
};

}  // namespace groundnav::mission

#endif  // GROUNDNAV__MISSION_HPP_
