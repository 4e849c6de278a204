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
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vantage/error.hpp"

namespace vantage
{

enum class Cell : std::uint8_t
{
  Free = 0,
  Occupied = 1,
};

struct WorldPoint
{
  double x{0.0};
  double y{0.0};

  friend bool operator==(const WorldPoint &, const WorldPoint &) = default;
};

struct GridIndex
{
  int col{0};
  int row{0};

  friend bool operator==(const GridIndex &, const GridIndex &) = default;
  friend auto operator<=>(const GridIndex & a, const GridIndex & b)
  {
    // row-major order
    if (auto c = a.row <=> b.row; c != 0) {
      return c;
    }
    return a.col <=> b.col;
  }
};

inline double distance(WorldPoint a, WorldPoint b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Row-major 2D occupancy grid. Cell (col, row) covers
/// [col*res, (col+1)*res) x [row*res, (row+1)*res) in world coordinates.
/// Any query outside the grid reports Occupied.
class GridMap
{
public:
  GridMap(int width, int height, double resolution, Cell fill = Cell::Free)
  : GridMap(width, height, resolution,
      std::vector<Cell>(checked_count(width, height), fill)) {}

  GridMap(int width, int height, double resolution, std::vector<Cell> cells)
  : width_(width), height_(height), resolution_(resolution), cells_(std::move(cells))
  {
    if (width < 1 || height < 1) {
      throw Error(ErrorCode::InvalidArgument, "grid dimensions must be positive");
    }
    if (!(resolution > 0.0) || !std::isfinite(resolution)) {
      throw Error(ErrorCode::InvalidArgument, "resolution must be positive and finite");
    }
    if (cells_.size() != checked_count(width, height)) {
      throw Error(
        ErrorCode::DimensionMismatch,
        "expected " + std::to_string(checked_count(width, height)) + " cells, got " +
        std::to_string(cells_.size()));
    }
  }

  int width() const noexcept {return width_;}
  int height() const noexcept {return height_;}
  double resolution() const noexcept {return resolution_;}
  std::size_t size() const noexcept {return cells_.size();}
  std::span<const Cell> cells() const noexcept {return cells_;}

  bool in_bounds(GridIndex c) const noexcept
  {
    return c.col >= 0 && c.row >= 0 && c.col < width_ && c.row < height_;
  }

  std::size_t index(GridIndex c) const noexcept
  {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }

  GridIndex cell_at(std::size_t i) const noexcept
  {
    return {static_cast<int>(i % static_cast<std::size_t>(width_)),
      static_cast<int>(i / static_cast<std::size_t>(width_))};
  }

  Cell at(GridIndex c) const noexcept
  {
    return in_bounds(c) ? cells_[index(c)] : Cell::Occupied;
  }

  bool free(GridIndex c) const noexcept {return at(c) == Cell::Free;}

  void set(GridIndex c, Cell value)
  {
    if (!in_bounds(c)) {
      throw Error(ErrorCode::OutOfBounds, "set outside grid");
    }
    cells_[index(c)] = value;
  }

  /// Containing cell by floor; may lie outside the grid.
  GridIndex cell_of(WorldPoint p) const noexcept
  {
    return {static_cast<int>(std::floor(p.x / resolution_)),
      static_cast<int>(std::floor(p.y / resolution_))};
  }

  WorldPoint center(GridIndex c) const noexcept
  {
    return {(c.col + 0.5) * resolution_, (c.row + 0.5) * resolution_};
  }

  std::size_t count_free() const noexcept
  {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), Cell::Free));
  }

  friend bool operator==(const GridMap &, const GridMap &) = default;

private:
  static std::size_t checked_count(int width, int height)
  {
    if (width < 1 || height < 1) {
      throw Error(ErrorCode::InvalidArgument, "grid dimensions must be positive");
    }
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

  int width_;
  int height_;
  double resolution_;
  std::vector<Cell> cells_;
};

/// Checked conversion; throws OutOfBounds when p falls outside the grid.
inline GridIndex world_to_grid(const GridMap & map, WorldPoint p)
{
  const GridIndex c = map.cell_of(p);
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !map.in_bounds(c)) {
    throw Error(ErrorCode::OutOfBounds, "point outside grid");
  }
  return c;
}

inline WorldPoint grid_to_world(const GridMap & map, GridIndex c)
{
  if (!map.in_bounds(c)) {
    throw Error(ErrorCode::OutOfBounds, "cell outside grid");
  }
  return map.center(c);
}

inline bool is_free(const GridMap & map, WorldPoint p)
{
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    return false;
  }
  return map.free(map.cell_of(p));
}

/// Grows every occupied cell by `radius`: a cell stays free only if its center
/// is at least `radius` from the center of every occupied cell.
inline GridMap inflate(const GridMap & map, double radius)
{
  if (radius < 0.0 || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidArgument, "inflation radius must be finite and >= 0");
  }
  if (radius == 0.0) {
    return map;
  }
  const double reach = radius / map.resolution();
  // squared distances are integers; shave off rounding noise so that a cell at
  // exactly `radius` stays free
  const double limit = reach * reach - 1e-9;
  const int span = static_cast<int>(std::ceil(reach));
  std::vector<std::pair<int, int>> offsets;
  for (int dy = -span; dy <= span; ++dy) {
    for (int dx = -span; dx <= span; ++dx) {
      if (static_cast<double>(dx * dx + dy * dy) < limit) {
        offsets.emplace_back(dx, dy);
      }
    }
  }

  GridMap out = map;
  for (int row = 0; row < map.height(); ++row) {
    for (int col = 0; col < map.width(); ++col) {
      if (map.free({col, row})) {
        continue;
      }
      for (const auto & [dx, dy] : offsets) {
        const GridIndex n{col + dx, row + dy};
        if (out.in_bounds(n)) {
          out.set(n, Cell::Occupied);
        }
      }
    }
  }
  return out;
}

namespace detail
{

constexpr double kCornerEps = 1e-10;

}  // namespace detail

/// Walks every cell touched by the closed segment p0->p1, in order of the
/// segment parameter t in [0, 1]. Cell membership follows the floor
/// convention; when the segment passes through a cell corner all four cells
/// around that corner are reported, so nothing slips between two diagonal
/// cells. `visit(GridIndex, double t_entry)` returns false to stop early.
template<typename Visit>
void traverse_segment(const GridMap & map, WorldPoint p0, WorldPoint p1, Visit && visit)
{
  const double res = map.resolution();
  const double ax = p0.x / res;
  const double ay = p0.y / res;
  const double dx = p1.x / res - ax;
  const double dy = p1.y / res - ay;
  constexpr double inf = std::numeric_limits<double>::infinity();

  int cx = static_cast<int>(std::floor(ax));
  int cy = static_cast<int>(std::floor(ay));
  if (!visit(GridIndex{cx, cy}, 0.0)) {
    return;
  }

  int sx = 0;
  int sy = 0;
  double tx = inf;
  double ty = inf;
  double dtx = inf;
  double dty = inf;
  if (dx > 0.0) {
    sx = 1;
    dtx = 1.0 / dx;
    tx = (cx + 1 - ax) * dtx;
  } else if (dx < 0.0) {
    sx = -1;
    dtx = -1.0 / dx;
    tx = (ax - cx) * dtx;
  }
  if (dy > 0.0) {
    sy = 1;
    dty = 1.0 / dy;
    ty = (cy + 1 - ay) * dty;
  } else if (dy < 0.0) {
    sy = -1;
    dty = -1.0 / dy;
    ty = (ay - cy) * dty;
  }

  // a positive step enters the next cell at the boundary itself; a negative
  // step only once the boundary has been passed
  auto within = [](int step, double t) {
      return step > 0 ? t <= 1.0 : (step < 0 && t < 1.0);
    };

  while (true) {
    const bool x_ok = within(sx, tx);
    const bool y_ok = within(sy, ty);
    if (!x_ok && !y_ok) {
      return;
    }
    if (sx != 0 && sy != 0 && std::abs(tx - ty) <= detail::kCornerEps) {
      const double t = std::min(tx, ty);
      const int X = sx > 0 ? cx + 1 : cx;
      const int Y = sy > 0 ? cy + 1 : cy;
      for (const GridIndex c : {GridIndex{X - 1, Y - 1}, GridIndex{X, Y - 1},
          GridIndex{X - 1, Y}, GridIndex{X, Y}})
      {
        if (c == GridIndex{cx, cy}) {
          continue;
        }
        if (!visit(c, t)) {
          return;
        }
      }
      if (!(x_ok && y_ok)) {
        return;
      }
      cx += sx;
      cy += sy;
      tx += dtx;
      ty += dty;
      continue;
    }
    if (tx < ty) {
      if (!x_ok) {
        return;
      }
      cx += sx;
      if (!visit(GridIndex{cx, cy}, tx)) {
        return;
      }
      tx += dtx;
    } else {
      if (!y_ok) {
        return;
      }
      cy += sy;
      if (!visit(GridIndex{cx, cy}, ty)) {
        return;
      }
      ty += dty;
    }
  }
}

/// Segment parameter t in [0, 1] at which p0->p1 first enters a non-free cell.
inline std::optional<double> first_blocked(const GridMap & map, WorldPoint p0, WorldPoint p1)
{
  std::optional<double> hit;
  traverse_segment(
    map, p0, p1, [&](GridIndex c, double t) {
      if (!map.free(c)) {
        hit = t;
        return false;
      }
      return true;
    });
  return hit;
}

/// True iff every cell touched by the segment is free. Symmetric in its
/// endpoints.
inline bool segment_free(const GridMap & map, WorldPoint p0, WorldPoint p1)
{
  if (!std::isfinite(p0.x) || !std::isfinite(p0.y) || !std::isfinite(p1.x) ||
    !std::isfinite(p1.y))
  {
    return false;
  }
  if (std::pair{p1.x, p1.y} < std::pair{p0.x, p0.y}) {
    std::swap(p0, p1);
  }
  return !first_blocked(map, p0, p1).has_value();
}

}  // namespace vantage
