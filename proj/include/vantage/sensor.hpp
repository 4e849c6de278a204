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

#include <cmath>
#include <numbers>
#include <vector>

#include "vantage/error.hpp"
#include "vantage/grid.hpp"
#include "vantage/pose.hpp"

namespace vantage
{

/// Planar depth sensor. Rays are spread evenly over [-fov/2, +fov/2] around
/// the heading; ray i sits at heading + fov * (i / (n_rays - 1) - 1/2), so
/// ray 0 is the clockwise-most one.
struct SensorConfig
{
  double fov{std::numbers::pi / 2.0};
  int n_rays{64};
  double max_range{5.0};
};

inline void validate(const SensorConfig & cfg)
{
  if (!(cfg.fov > 0.0 && cfg.fov <= 2.0 * std::numbers::pi)) {
    throw Error(ErrorCode::InvalidArgument, "sensor fov must lie in (0, 2*pi]");
  }
  if (cfg.n_rays < 1) {
    throw Error(ErrorCode::InvalidArgument, "sensor needs at least one ray");
  }
  if (!(cfg.max_range > 0.0) || !std::isfinite(cfg.max_range)) {
    throw Error(ErrorCode::InvalidArgument, "sensor range must be positive and finite");
  }
}

/// Depths in meters, one per ray; a value equal to the range means no return.
struct DepthScan
{
  std::vector<double> depths;
};

inline double ray_angle(const SensorConfig & cfg, double heading, int i)
{
  if (cfg.n_rays == 1) {
    return heading;
  }
  return heading + cfg.fov * (static_cast<double>(i) / (cfg.n_rays - 1) - 0.5);
}

/// Distance from `origin` to the first occupied cell boundary along `angle`,
/// clipped to `max_range`.
inline double cast_ray(const GridMap & map, WorldPoint origin, double angle, double max_range)
{
  if (!is_free(map, origin)) {
    throw Error(ErrorCode::OriginOccupied, "ray origin lies in an occupied cell");
  }
  if (!(max_range >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "ray range must be >= 0");
  }
  const WorldPoint end{origin.x + max_range * std::cos(angle),
    origin.y + max_range * std::sin(angle)};
  if (const auto t = first_blocked(map, origin, end)) {
    return std::min(*t * max_range, max_range);
  }
  return max_range;
}

inline DepthScan render_depth(const GridMap & map, const Pose & pose, const SensorConfig & cfg)
{
  validate(cfg);
  if (!is_free(map, pose.position())) {
    throw Error(ErrorCode::OriginOccupied, "sensor pose lies in an occupied cell");
  }
  DepthScan scan;
  scan.depths.reserve(static_cast<std::size_t>(cfg.n_rays));
  for (int i = 0; i < cfg.n_rays; ++i) {
    scan.depths.push_back(cast_ray(map, pose.position(), ray_angle(cfg, pose.theta, i),
      cfg.max_range));
  }
  return scan;
}

/// Smallest admissible sensor-to-target distance: the target has to lie
/// outside the half-cell neighborhood of the sensing cell center.
inline double min_target_distance(const GridMap & map)
{
  return 0.5 * map.resolution();
}

/// Omnidirectional observability of `target` from the center of cell `c`: the
/// cell is free, the target is within (res/2, range], and no occupied cell lies
/// strictly between the two. The cell containing the target never occludes,
/// so a target may sit on an obstacle surface.
inline bool visible_from(const GridMap & map, GridIndex c, WorldPoint target, double range)
{
  if (!map.free(c) || !std::isfinite(target.x) || !std::isfinite(target.y)) {
    return false;
  }
  const WorldPoint origin = map.center(c);
  const double d = distance(origin, target);
  if (!(d > min_target_distance(map)) || d > range) {
    return false;
  }
  const GridIndex target_cell = map.cell_of(target);
  bool clear = true;
  traverse_segment(
    map, origin, target, [&](GridIndex cell, double t) {
      if (t >= 1.0 - 1e-12) {
        return false;
      }
      if (cell != target_cell && !map.free(cell)) {
        clear = false;
        return false;
      }
      return true;
    });
  return clear;
}

/// Field-of-view constrained visibility: the target bearing is within
/// fov/2 of the heading (inclusive) and the target is visible from the
/// agent's cell.
inline bool in_view(
  const GridMap & map, const Pose & pose, WorldPoint target, const SensorConfig & cfg)
{
  const double off = wrap_angle(bearing(pose.position(), target) - pose.theta);
  if (std::abs(off) > cfg.fov / 2.0) {
    return false;
  }
  return visible_from(map, map.cell_of(pose.position()), target, cfg.max_range);
}

}  // namespace vantage
