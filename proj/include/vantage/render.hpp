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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vantage/env.hpp"
#include "vantage/grid.hpp"
#include "vantage/map_io.hpp"
#include "vantage/oracle.hpp"
#include "vantage/pose.hpp"
#include "vantage/scene.hpp"

namespace vantage
{

using Rgb = std::array<std::uint8_t, 3>;

namespace palette
{
inline constexpr Rgb kFree{128, 128, 128};
inline constexpr Rgb kObstacle{255, 255, 255};
inline constexpr Rgb kInflated{96, 96, 96};
inline constexpr Rgb kGoal{173, 216, 230};
inline constexpr Rgb kInspection{128, 0, 160};
inline constexpr Rgb kNavBefore{255, 140, 0};
inline constexpr Rgb kNavAfter{255, 105, 180};
inline constexpr Rgb kTrajectory{0, 170, 0};
inline constexpr Rgb kStart{0, 60, 255};
inline constexpr Rgb kTarget{220, 0, 0};
}  // namespace palette

/// RGB raster; pixel (0, 0) is the top-left corner, so grid row 0 ends up at
/// the bottom of the image.
struct Image
{
  int width{0};
  int height{0};
  std::vector<std::uint8_t> rgb;

  Rgb at(int x, int y) const
  {
    const std::size_t i = 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
      static_cast<std::size_t>(x));
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
  }

  void set(int x, int y, Rgb c)
  {
    if (x < 0 || y < 0 || x >= width || y >= height) {
      return;
    }
    const std::size_t i = 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
      static_cast<std::size_t>(x));
    rgb[i] = c[0];
    rgb[i + 1] = c[1];
    rgb[i + 2] = c[2];
  }
};

struct RenderOptions
{
  int scale{2};  // pixels per cell
  bool goal_set{true};
  bool inspection_path{true};
  bool navigation_path{true};
  bool markers{true};
};

namespace detail
{

inline void paint_cell(Image & img, const GridMap & map, GridIndex c, int scale, Rgb color)
{
  const int y0 = (map.height() - 1 - c.row) * scale;
  const int x0 = c.col * scale;
  for (int dy = 0; dy < scale; ++dy) {
    for (int dx = 0; dx < scale; ++dx) {
      img.set(x0 + dx, y0 + dy, color);
    }
  }
}

}  // namespace detail

/// Map, candidate goal cells, oracle inspection path, navigation path (split
/// at first visibility) and an optional agent trajectory.
inline Image render_episode(
  const Scene & scene, const EpisodeSpec * ep, double sensor_range,
  const std::vector<Pose> * trajectory, const RenderOptions & opt = {})
{
  const GridMap & raw = scene.sensing;
  const GridMap & trav = scene.traversable;
  const int scale = std::max(1, opt.scale);
  Image img;
  img.width = raw.width() * scale;
  img.height = raw.height() * scale;
  img.rgb.assign(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height) * 3, 0);

  for (std::size_t i = 0; i < raw.size(); ++i) {
    const GridIndex c = raw.cell_at(i);
    const Rgb color = !raw.free(c) ? palette::kObstacle :
      (!trav.free(c) ? palette::kInflated : palette::kFree);
    detail::paint_cell(img, raw, c, scale, color);
  }
  if (!ep) {
    return img;
  }
  if (opt.goal_set) {
    const GoalSet goals = candidate_goal_set(scene, ep->target, sensor_range);
    for (const GridIndex & c : goals.cells) {
      detail::paint_cell(img, raw, c, scale, palette::kGoal);
    }
  }
  if (opt.navigation_path) {
    try {
      const Path nav = shortest_navigation_path(trav, ep->start.position(), ep->target);
      const VisibilityPrefix prefix =
        navigation_visibility_prefix(raw, nav, ep->target, sensor_range);
      for (std::size_t i = 0; i < nav.cells.size(); ++i) {
        const bool before = !prefix.visible || i <= prefix.index;
        detail::paint_cell(img, raw, nav.cells[i], scale,
          before ? palette::kNavBefore : palette::kNavAfter);
      }
    } catch (const Error &) {
      // no navigation path to draw
    }
  }
  if (opt.inspection_path) {
    for (const GridIndex & c : ep->oracle.inspection_path.cells) {
      detail::paint_cell(img, raw, c, scale, palette::kInspection);
    }
  }
  if (trajectory) {
    for (std::size_t i = 1; i < trajectory->size(); ++i) {
      traverse_segment(
        raw, (*trajectory)[i - 1].position(), (*trajectory)[i].position(),
        [&](GridIndex c, double) {
          if (raw.in_bounds(c)) {
            detail::paint_cell(img, raw, c, scale, palette::kTrajectory);
          }
          return true;
        });
    }
  }
  if (opt.markers) {
    detail::paint_cell(img, raw, raw.cell_of(ep->start.position()), scale, palette::kStart);
    detail::paint_cell(img, raw, raw.cell_of(ep->target), scale, palette::kTarget);
  }
  return img;
}

/// Binary PPM (P6).
inline std::string encode_ppm(const Image & img)
{
  std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
    "\n255\n";
  out.append(reinterpret_cast<const char *>(img.rgb.data()), img.rgb.size());
  return out;
}

/// Trajectory log: one "x,y,theta" line per pose, optional "x,y,theta" header.
inline std::vector<Pose> parse_trajectory(std::string_view text)
{
  std::vector<Pose> poses;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      nl = text.size();
    }
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty() || line == "x,y,theta") {
      continue;
    }
    std::array<double, 3> v{};
    std::size_t field = 0;
    std::size_t start = 0;
    for (; field < 3; ++field) {
      const std::size_t comma = field < 2 ? line.find(',', start) : line.size();
      if (comma == std::string_view::npos ||
        !detail::parse_number(line.substr(start, comma - start), v[field]))
      {
        throw Error(ErrorCode::InvalidArgument, "bad trajectory line: " + std::string(line));
      }
      start = comma + 1;
    }
    poses.emplace_back(v[0], v[1], v[2]);
  }
  return poses;
}

inline std::string format_trajectory(const std::vector<Pose> & poses)
{
  std::string out = "x,y,theta\n";
  for (const Pose & p : poses) {
    out += format_double(p.x) + "," + format_double(p.y) + "," + format_double(p.theta) + "\n";
  }
  return out;
}

}  // namespace vantage
