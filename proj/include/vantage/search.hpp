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
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <vector>

#include "vantage/error.hpp"
#include "vantage/grid.hpp"

namespace vantage
{

/// Exact path cost on the 8-connected grid: `axis` straight steps plus
/// `diag` diagonal steps, i.e. axis + diag*sqrt(2) cells. Ordering is exact,
/// so two searches that find equally short paths report identical costs no
/// matter in which order the steps were accumulated.
struct OctileCost
{
  std::int64_t axis{0};
  std::int64_t diag{0};

  double cells() const noexcept
  {
    return static_cast<double>(axis) + static_cast<double>(diag) * std::numbers::sqrt2;
  }
  double meters(double resolution) const noexcept {return resolution * cells();}

  OctileCost operator+(const OctileCost & o) const noexcept
  {
    return {axis + o.axis, diag + o.diag};
  }

  friend bool operator==(const OctileCost &, const OctileCost &) = default;

  friend std::strong_ordering operator<=>(const OctileCost & a, const OctileCost & b)
  {
    // sign of (da + db*sqrt(2)); sqrt(2) is irrational so equality needs da = db = 0
    const std::int64_t da = a.axis - b.axis;
    const std::int64_t db = a.diag - b.diag;
    if (da >= 0 && db >= 0) {
      return (da == 0 && db == 0) ? std::strong_ordering::equal : std::strong_ordering::greater;
    }
    if (da <= 0 && db <= 0) {
      return std::strong_ordering::less;
    }
    const std::int64_t lhs = da * da;
    const std::int64_t rhs = 2 * db * db;
    if (da > 0) {
      return lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return rhs > lhs ? std::strong_ordering::greater : std::strong_ordering::less;
  }
};

/// Octile distance between two cells, in exact form.
inline OctileCost octile(GridIndex a, GridIndex b)
{
  const std::int64_t dx = std::abs(a.col - b.col);
  const std::int64_t dy = std::abs(a.row - b.row);
  return {std::max(dx, dy) - std::min(dx, dy), std::min(dx, dy)};
}

struct Path
{
  std::vector<GridIndex> cells;
  OctileCost cost;
  double length{0.0};  // meters

  bool empty() const noexcept {return cells.empty();}
};

struct Step
{
  int dx;
  int dy;
  OctileCost cost;
};

inline constexpr std::array<Step, 8> kSteps{{
  {1, 0, {1, 0}}, {-1, 0, {1, 0}}, {0, 1, {1, 0}}, {0, -1, {1, 0}},
  {1, 1, {0, 1}}, {-1, 1, {0, 1}}, {1, -1, {0, 1}}, {-1, -1, {0, 1}},
}};

/// True if `from -> from + step` is a legal move: the destination is free and
/// a diagonal move does not cut a corner (both adjacent axis cells free).
inline bool can_step(const GridMap & map, GridIndex from, const Step & s)
{
  const GridIndex to{from.col + s.dx, from.row + s.dy};
  if (!map.free(to)) {
    return false;
  }
  if (s.dx != 0 && s.dy != 0) {
    return map.free({from.col + s.dx, from.row}) && map.free({from.col, from.row + s.dy});
  }
  return true;
}

/// Sums the step costs of a cell sequence; throws if two consecutive cells are
/// not 8-neighbors.
inline OctileCost path_cost(std::span<const GridIndex> cells)
{
  OctileCost cost;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    const int dx = std::abs(cells[i].col - cells[i - 1].col);
    const int dy = std::abs(cells[i].row - cells[i - 1].row);
    if (dx > 1 || dy > 1 || (dx == 0 && dy == 0)) {
      throw Error(ErrorCode::InvalidArgument, "path cells are not 8-connected");
    }
    cost = cost + (dx + dy == 2 ? OctileCost{0, 1} : OctileCost{1, 0});
  }
  return cost;
}

inline Path make_path(std::vector<GridIndex> cells, double resolution)
{
  Path p;
  p.cost = path_cost(cells);
  p.length = p.cost.meters(resolution);
  p.cells = std::move(cells);
  return p;
}

inline Path trace_back(
  const GridMap & map, const std::vector<std::int64_t> & parent, std::size_t goal)
{
  std::vector<GridIndex> cells;
  for (std::int64_t i = static_cast<std::int64_t>(goal); i >= 0;
    i = parent[static_cast<std::size_t>(i)])
  {
    cells.push_back(map.cell_at(static_cast<std::size_t>(i)));
  }
  std::reverse(cells.begin(), cells.end());
  return make_path(std::move(cells), map.resolution());
}

/// Shortest 8-connected path length a -> b in meters, or +infinity when b is
/// not reachable from a.
inline double geodesic_distance(const GridMap & map, GridIndex a, GridIndex b)
{
  if (!map.free(a)) {
    throw Error(ErrorCode::StartOccupied, "geodesic start cell is occupied");
  }
  if (!map.free(b)) {
    throw Error(ErrorCode::GoalOccupied, "geodesic goal cell is occupied");
  }
  if (a == b) {
    return 0.0;
  }
  // A* with the (consistent) octile heuristic; ties broken on exact g
  struct Node
  {
    double f;
    OctileCost g;
    std::size_t index;
  };
  auto worse = [](const Node & x, const Node & y) {
      if (x.f != y.f) {
        return x.f > y.f;
      }
      return x.index > y.index;
    };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
  std::vector<OctileCost> g(map.size());
  std::vector<std::uint8_t> seen(map.size(), 0);
  std::vector<std::uint8_t> closed(map.size(), 0);
  const std::size_t goal = map.index(b);
  seen[map.index(a)] = 1;
  open.push({octile(a, b).cells(), {}, map.index(a)});
  while (!open.empty()) {
    const Node n = open.top();
    open.pop();
    if (closed[n.index]) {
      continue;
    }
    closed[n.index] = 1;
    if (n.index == goal) {
      return n.g.meters(map.resolution());
    }
    const GridIndex c = map.cell_at(n.index);
    for (const Step & s : kSteps) {
      if (!can_step(map, c, s)) {
        continue;
      }
      const GridIndex to{c.col + s.dx, c.row + s.dy};
      const std::size_t ti = map.index(to);
      const OctileCost ng = n.g + s.cost;
      if (closed[ti] || (seen[ti] && !(ng < g[ti]))) {
        continue;
      }
      seen[ti] = 1;
      g[ti] = ng;
      open.push({ng.cells() + octile(to, b).cells(), ng, ti});
    }
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace vantage
