// Copyright 2026 The Vantage Authors
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


#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "vantage/error.hpp"
#include "vantage/grid.hpp"
#include "vantage/scene.hpp"
#include "vantage/search.hpp"
#include "vantage/sensor.hpp"

namespace vantage
{

/// Cells from which the target can be inspected: traversable, within sensor
/// range, and with an unobstructed line of sight.
struct GoalSet
{
  std::vector<GridIndex> cells;    // row-major order
  std::vector<std::uint8_t> mask;  // one flag per map cell
  WorldPoint target;
  double range{0.0};

  bool empty() const noexcept {return cells.empty();}
  std::size_t size() const noexcept {return cells.size();}
};

inline bool contains(const GoalSet & goals, const GridMap & map, GridIndex c)
{
  return map.in_bounds(c) && goals.mask[map.index(c)] != 0;
}

/// `traversable` decides constraint (i); visibility is tested on `sensing`.
inline GoalSet candidate_goal_set(
  const GridMap & traversable, const GridMap & sensing, WorldPoint target, double range)
{
  GoalSet goals;
  goals.target = target;
  goals.range = range;
  goals.mask.assign(traversable.size(), 0);
  if (!(range > 0.0) || !std::isfinite(target.x) || !std::isfinite(target.y)) {
    return goals;
  }
  const double res = traversable.resolution();
  const int c0 = std::max(0, static_cast<int>(std::floor((target.x - range) / res)) - 1);
  const int c1 = std::min(traversable.width() - 1,
    static_cast<int>(std::floor((target.x + range) / res)) + 1);
  const int r0 = std::max(0, static_cast<int>(std::floor((target.y - range) / res)) - 1);
  const int r1 = std::min(traversable.height() - 1,
    static_cast<int>(std::floor((target.y + range) / res)) + 1);
  for (int row = r0; row <= r1; ++row) {
    for (int col = c0; col <= c1; ++col) {
      const GridIndex c{col, row};
      if (traversable.free(c) && visible_from(sensing, c, target, range)) {
        goals.cells.push_back(c);
        goals.mask[traversable.index(c)] = 1;
      }
    }
  }
  return goals;
}

inline GoalSet candidate_goal_set(const GridMap & map, WorldPoint target, double range)
{
  return candidate_goal_set(map, map, target, range);
}

inline GoalSet candidate_goal_set(const Scene & scene, WorldPoint target, double range)
{
  return candidate_goal_set(scene.traversable, scene.sensing, target, range);
}

namespace detail
{

// 1D squared distance transform (lower envelope of parabolas).
inline void edt_1d(const double * f, double * d, int n, std::vector<int> & v, std::vector<double> & z)
{
  constexpr double inf = std::numeric_limits<double>::infinity();
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == inf) {
      continue;
    }
    while (k >= 0) {
      const int p = v[static_cast<std::size_t>(k)];
      const double s = ((f[q] + q * q) - (f[p] + p * p)) / (2.0 * (q - p));
      if (s <= z[static_cast<std::size_t>(k)]) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    v[static_cast<std::size_t>(k)] = q;
    z[static_cast<std::size_t>(k)] = k == 0 ? -inf :
      ((f[q] + q * q) - (f[v[static_cast<std::size_t>(k - 1)]] +
      v[static_cast<std::size_t>(k - 1)] * v[static_cast<std::size_t>(k - 1)])) /
      (2.0 * (q - v[static_cast<std::size_t>(k - 1)]));
  }
  if (k < 0) {
    std::fill(d, d + n, inf);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (j < k && z[static_cast<std::size_t>(j + 1)] < q) {
      ++j;
    }
    const int p = v[static_cast<std::size_t>(j)];
    d[q] = static_cast<double>((q - p) * (q - p)) + f[p];
  }
}

}  // namespace detail

/// Exact squared Euclidean distance, in cells^2, from every cell center to the
/// nearest goal cell center (+inf when the goal set is empty).
inline std::vector<double> squared_distance_to_goals(const GridMap & map, const GoalSet & goals)
{
  constexpr double inf = std::numeric_limits<double>::infinity();
  const int w = map.width();
  const int h = map.height();
  std::vector<double> grid(map.size(), inf);
  for (const GridIndex & c : goals.cells) {
    grid[map.index(c)] = 0.0;
  }
  const int n = std::max(w, h);
  std::vector<double> f(static_cast<std::size_t>(n));
  std::vector<double> d(static_cast<std::size_t>(n));
  std::vector<int> v(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(n) + 1);
  for (int col = 0; col < w; ++col) {
    for (int row = 0; row < h; ++row) {
      f[static_cast<std::size_t>(row)] = grid[map.index({col, row})];
    }
    detail::edt_1d(f.data(), d.data(), h, v, z);
    for (int row = 0; row < h; ++row) {
      grid[map.index({col, row})] = d[static_cast<std::size_t>(row)];
    }
  }
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      f[static_cast<std::size_t>(col)] = grid[map.index({col, row})];
    }
    detail::edt_1d(f.data(), d.data(), w, v, z);
    for (int col = 0; col < w; ++col) {
      grid[map.index({col, row})] = d[static_cast<std::size_t>(col)];
    }
  }
  return grid;
}

/// Search heuristic in meters: Euclidean distance from each cell center to the
/// closest goal cell center.
inline std::vector<double> goal_heuristic(const GridMap & map, const GoalSet & goals)
{
  std::vector<double> h = squared_distance_to_goals(map, goals);
  for (double & x : h) {
    x = map.resolution() * std::sqrt(x);
  }
  return h;
}

struct SearchStats
{
  std::size_t expanded{0};
};

/// A* over the 8-connected grid with exact path costs. Stops when the first
/// goal cell is expanded. Ties: lower f, then lower h, then row-major index.
template<typename IsGoal, typename Heuristic>
std::optional<Path> astar(
  const GridMap & map, GridIndex start, IsGoal && is_goal, Heuristic && heuristic,
  SearchStats * stats = nullptr)
{
  struct Node
  {
    double f;
    double h;
    std::size_t index;
    OctileCost g;
  };
  auto worse = [](const Node & a, const Node & b) {
      if (a.f != b.f) {
        return a.f > b.f;
      }
      if (a.h != b.h) {
        return a.h > b.h;
      }
      return a.index > b.index;
    };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
  std::vector<OctileCost> g(map.size());
  std::vector<std::int64_t> parent(map.size(), -1);
  std::vector<std::uint8_t> seen(map.size(), 0);
  std::vector<std::uint8_t> closed(map.size(), 0);

  const std::size_t si = map.index(start);
  seen[si] = 1;
  const double h0 = heuristic(si);
  open.push({h0, h0, si, {}});
  while (!open.empty()) {
    const Node n = open.top();
    open.pop();
    if (closed[n.index]) {
      continue;
    }
    closed[n.index] = 1;
    if (stats) {
      ++stats->expanded;
    }
    if (is_goal(n.index)) {
      return trace_back(map, parent, n.index);
    }
    const GridIndex c = map.cell_at(n.index);
    for (const Step & s : kSteps) {
      if (!can_step(map, c, s)) {
        continue;
      }
      const std::size_t ti = map.index({c.col + s.dx, c.row + s.dy});
      if (closed[ti]) {
        continue;
      }
      const OctileCost ng = n.g + s.cost;
      if (seen[ti] && !(ng < g[ti])) {
        continue;
      }
      seen[ti] = 1;
      g[ti] = ng;
      parent[ti] = static_cast<std::int64_t>(n.index);
      const double h = heuristic(ti);
      open.push({ng.meters(map.resolution()) + h, h, ti, ng});
    }
  }
  return std::nullopt;
}

/// Output of the inspection oracle.
struct OracleResult
{
  Path inspection_path;
  GridIndex goal;          // G_opt, last cell of the path
  WorldPoint goal_point;   // center of G_opt
};

/// Shortest path from the cell containing `start` to any cell of the goal set.
inline OracleResult shortest_inspection_path(
  const GridMap & traversable, const GridMap & sensing, WorldPoint start, WorldPoint target,
  double range, SearchStats * stats = nullptr)
{
  const GridIndex s = traversable.cell_of(start);
  if (!traversable.free(s)) {
    throw Error(ErrorCode::StartOccupied, "inspection search starts in an occupied cell");
  }
  const GoalSet goals = candidate_goal_set(traversable, sensing, target, range);
  if (goals.empty()) {
    throw Error(ErrorCode::NoInspectionPoint, "no cell can observe the target");
  }
  const std::vector<double> h = goal_heuristic(traversable, goals);
  auto path = astar(
    traversable, s, [&](std::size_t i) {return goals.mask[i] != 0;},
    [&](std::size_t i) {return h[i];}, stats);
  if (!path) {
    throw Error(ErrorCode::Unreachable, "no inspection cell is reachable from the start");
  }
  OracleResult result;
  result.goal = path->cells.back();
  result.goal_point = traversable.center(result.goal);
  result.inspection_path = std::move(*path);
  return result;
}

inline OracleResult shortest_inspection_path(
  const GridMap & map, WorldPoint start, WorldPoint target, double range)
{
  return shortest_inspection_path(map, map, start, target, range);
}

inline OracleResult shortest_inspection_path(
  const Scene & scene, WorldPoint start, WorldPoint target, double range)
{
  return shortest_inspection_path(scene.traversable, scene.sensing, start, target, range);
}

/// Cost-minimal path between the cells containing `start` and `goal`.
inline Path shortest_navigation_path(const GridMap & map, WorldPoint start, WorldPoint goal)
{
  const GridIndex s = map.cell_of(start);
  const GridIndex g = map.cell_of(goal);
  if (!map.free(s)) {
    throw Error(ErrorCode::StartOccupied, "navigation start cell is occupied");
  }
  if (!map.free(g)) {
    throw Error(ErrorCode::GoalOccupied, "navigation goal cell is occupied");
  }
  const std::size_t gi = map.index(g);
  const double res = map.resolution();
  auto path = astar(
    map, s, [&](std::size_t i) {return i == gi;},
    [&](std::size_t i) {return octile(map.cell_at(i), g).meters(res);});
  if (!path) {
    throw Error(ErrorCode::Unreachable, "navigation goal is not reachable");
  }
  return std::move(*path);
}

/// Portion of a navigation path walked before the target first becomes
/// visible.
struct VisibilityPrefix
{
  bool visible{false};     // false: no cell on the path sees the target
  std::size_t index{0};    // first path cell that sees the target
  OctileCost cost;
  double length{0.0};      // meters; full path length when not visible
};

inline VisibilityPrefix navigation_visibility_prefix(
  const GridMap & sensing, const Path & nav_path, WorldPoint target, double range)
{
  VisibilityPrefix out;
  OctileCost cost;
  for (std::size_t i = 0; i < nav_path.cells.size(); ++i) {
    if (i > 0) {
      cost = cost + path_cost(std::span(nav_path.cells).subspan(i - 1, 2));
    }
    if (visible_from(sensing, nav_path.cells[i], target, range)) {
      out.visible = true;
      out.index = i;
      out.cost = cost;
      out.length = cost.meters(sensing.resolution());
      return out;
    }
  }
  out.index = nav_path.cells.empty() ? 0 : nav_path.cells.size() - 1;
  out.cost = cost;
  out.length = cost.meters(sensing.resolution());
  return out;
}

}  // namespace vantage
