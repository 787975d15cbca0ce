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
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "groundnav/mission.hpp"

namespace groundnav::mission
{

namespace
{

constexpr double kSqrt2 = 1.4142135623730951;

double octile(Cell a, Cell b)
{
  const double dr = std::abs(a.row - b.row);
  const double dc = std::abs(a.col - b.col);
  return std::max(dr, dc) + (kSqrt2 - 1.0) * std::min(dr, dc);
}

std::string show(Cell c)
{
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

bool step_allowed(const OccupancyGrid & grid, Cell from, Cell to)
{
  if (!grid.free(to)) {
    return false;
  }
  if (from.row != to.row && from.col != to.col) {
    const bool a = grid.free({from.row, to.col});
    const bool b = grid.free({to.row, from.col});
    return a || b;
  }
  return true;
}

}  // namespace

OccupancyGrid inflate(const OccupancyGrid & grid, double radius)
{
  if (!std::isfinite(radius) || radius < 0.0) {
    throw ConfigError("inflation radius must be a non-negative number");
  }
  OccupancyGrid out = grid;
  if (radius == 0.0) {
    return out;
  }
  const int reach = static_cast<int>(std::floor(radius / grid.resolution() + 1e-9));
  const double limit = radius + 1e-9;
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      if (!grid.occupied({r, c})) {
        continue;
      }
      for (int dr = -reach; dr <= reach; ++dr) {
        for (int dc = -reach; dc <= reach; ++dc) {
          const Cell n{r + dr, c + dc};
          if (grid.in_bounds(n) && std::hypot(dr, dc) * grid.resolution() <= limit) {
            out.set_occupied(n);
          }
        }
      }
    }
  }
  return out;
}

double path_cost(const std::vector<Cell> & cells)
{
  double cost = 0.0;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    const bool diagonal = cells[i].row != cells[i - 1].row && cells[i].col != cells[i - 1].col;
    cost += diagonal ? kSqrt2 : 1.0;
  }
  return cost;
}

Path plan_path(const OccupancyGrid & grid, Cell start, Cell goal)
{
  if (!grid.free(start)) {
    throw GroundingError("start cell " + show(start) + " is blocked or outside the map");
  }
  if (!grid.free(goal)) {
    throw GroundingError("goal cell " + show(goal) + " is blocked or outside the map");
  }
  const auto w = static_cast<std::size_t>(grid.width());
  const auto idx = [w](Cell c) {
      return static_cast<std::size_t>(c.row) * w + static_cast<std::size_t>(c.col);
    };
  const std::size_t n = w * static_cast<std::size_t>(grid.height());
  std::vector<double> g(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, n);
  std::vector<char> closed(n, 0);

  // (f, sequence, cell); the sequence keeps pops in insertion order on ties.
  using Entry = std::tuple<double, std::uint64_t, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::uint64_t seq = 0;
  g[idx(start)] = 0.0;
  open.emplace(octile(start, goal), seq++, start.row, start.col);

  while (!open.empty()) {
    const auto [f, s, r, c] = open.top();
    open.pop();
    const Cell cur{r, c};
    const std::size_t ci = idx(cur);
    if (closed[ci]) {
      continue;
    }
    closed[ci] = 1;
    if (cur == goal) {
      break;
    }
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) {
          continue;
        }
        const Cell next{r + dr, c + dc};
        if (!step_allowed(grid, cur, next) || closed[idx(next)]) {
          continue;
        }
        const double cand = g[ci] + ((dr != 0 && dc != 0) ? kSqrt2 : 1.0);
        const std::size_t ni = idx(next);
        if (cand < g[ni] - 1e-12) {
          g[ni] = cand;
          parent[ni] = ci;
          open.emplace(cand + octile(next, goal), seq++, next.row, next.col);
        }
      }
    }
  }
  if (!closed[idx(goal)]) {
    throw UnreachableError("no path from " + show(start) + " to " + show(goal));
  }
  Path path;
  for (std::size_t i = idx(goal); i != n; i = parent[i]) {
    path.cells.push_back({static_cast<int>(i / w), static_cast<int>(i % w)});
  }
  std::reverse(path.cells.begin(), path.cells.end());
  path.cost = g[idx(goal)];
  return path;
}

std::string check_path(const OccupancyGrid & grid, const Path & path, Cell start, Cell goal)
{
  if (path.cells.empty()) {
    return "path is empty";
  }
  if (path.cells.front() != start) {
    return "path does not begin at the start cell";
  }
  if (path.cells.back() != goal) {
    return "path does not end at the goal cell";
  }
  for (std::size_t i = 0; i < path.cells.size(); ++i) {
    const Cell c = path.cells[i];
    if (!grid.free(c)) {
      return "cell " + show(c) + " is not free";
    }
    if (i == 0) {
      continue;
    }
    const Cell p = path.cells[i - 1];
    if (std::max(std::abs(c.row - p.row), std::abs(c.col - p.col)) != 1) {
      return "cells " + show(p) + " and " + show(c) + " are not 8-adjacent";
    }
    if (!step_allowed(grid, p, c)) {
      return "step " + show(p) + " -> " + show(c) + " squeezes between blocked cells";
    }
  }
  if (std::abs(path_cost(path.cells) - path.cost) > 1e-9) {
    return "recorded cost does not match the cell sequence";
  }
  return {};
}

std::string render_overlay(
  const OccupancyGrid & grid, const std::vector<Cell> & path, const std::vector<Cell> & marked)
{
  std::vector<std::string> rows(
    static_cast<std::size_t>(grid.height()), std::string(static_cast<std::size_t>(grid.width()), '.'));
  const auto put = [&](Cell c, char ch) {
      if (grid.in_bounds(c)) {
        rows[static_cast<std::size_t>(c.row)][static_cast<std::size_t>(c.col)] = ch;
      }
    };
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      if (grid.occupied({r, c})) {
        put({r, c}, '#');
      }
    }
  }
  for (const auto & c : marked) {
    put(c, 'o');
  }
  for (const auto & c : path) {
    put(c, '*');
  }
  if (!path.empty()) {
    put(path.front(), 'S');
    put(path.back(), 'G');
  }
  std::ostringstream out;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    out << *it << '\n';
  }
  return out.str();
}

}  // namespace groundnav::mission
