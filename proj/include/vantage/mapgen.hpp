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
#include <cstdint>
#include <string>
#include <vector>

#include "vantage/error.hpp"
#include "vantage/grid.hpp"
#include "vantage/random.hpp"

namespace vantage
{

/// Parameters of the procedural indoor generator.
struct MapGenSpec
{
  int width{200};
  int height{200};
  double resolution{0.05};
  int rooms{6};
  double obstacle_density{0.05};  // fraction of room area covered by clutter, [0, 1)
  int corridor_width{16};         // door opening between adjacent rooms, cells
  std::uint64_t seed{0};
};

inline void validate(const MapGenSpec & spec)
{
  if (spec.width < 20 || spec.height < 20) {
    throw Error(ErrorCode::InvalidArgument, "generated maps must be at least 20x20 cells");
  }
  if (!(spec.resolution > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "resolution must be positive");
  }
  if (spec.rooms < 1) {
    throw Error(ErrorCode::InvalidArgument, "room count must be >= 1");
  }
  if (!(spec.obstacle_density >= 0.0 && spec.obstacle_density < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "obstacle density must lie in [0, 1)");
  }
  if (spec.corridor_width < 1) {
    throw Error(ErrorCode::InvalidArgument, "corridor width must be >= 1");
  }
}

/// Labels 4-connected free components; returns per-cell labels (-1 for
/// occupied) and the size of each component.
inline std::pair<std::vector<int>, std::vector<std::size_t>> free_components(const GridMap & map)
{
  std::vector<int> label(map.size(), -1);
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (label[i] != -1 || !map.free(map.cell_at(i))) {
      continue;
    }
    const int id = static_cast<int>(sizes.size());
    std::size_t count = 0;
    label[i] = id;
    stack.push_back(i);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      ++count;
      const GridIndex c = map.cell_at(cur);
      for (const GridIndex n : {GridIndex{c.col + 1, c.row}, GridIndex{c.col - 1, c.row},
          GridIndex{c.col, c.row + 1}, GridIndex{c.col, c.row - 1}})
      {
        if (!map.free(n)) {
          continue;
        }
        const std::size_t ni = map.index(n);
        if (label[ni] == -1) {
          label[ni] = id;
          stack.push_back(ni);
        }
      }
    }
    sizes.push_back(count);
  }
  return {std::move(label), std::move(sizes)};
}

namespace detail
{

struct Rect
{
  int x0, y0, x1, y1;  // inclusive

  int w() const {return x1 - x0 + 1;}
  int h() const {return y1 - y0 + 1;}
  long area() const {return static_cast<long>(w()) * h();}
};

struct Split
{
  bool vertical;  // wall runs along y at fixed x
  int pos;        // first wall cell along the split axis
  int thickness;
  int lo, hi;     // extent along the wall, inclusive
};

inline void fill(GridMap & map, const Rect & r, Cell value)
{
  for (int y = r.y0; y <= r.y1; ++y) {
    for (int x = r.x0; x <= r.x1; ++x) {
      map.set({x, y}, value);
    }
  }
}

inline GridMap generate_attempt(const MapGenSpec & spec, Rng & rng, std::vector<Rect> & doors)
{
  constexpr int kWall = 2;
  constexpr int kMinSide = 10;
  GridMap map(spec.width, spec.height, spec.resolution, Cell::Occupied);

  std::vector<Rect> regions{{1, 1, spec.width - 2, spec.height - 2}};
  std::vector<Split> splits;
  while (static_cast<int>(regions.size()) < spec.rooms) {
    // split the largest region that still fits two rooms and a wall
    int best = -1;
    for (int i = 0; i < static_cast<int>(regions.size()); ++i) {
      const Rect & r = regions[static_cast<std::size_t>(i)];
      if (std::max(r.w(), r.h()) < 2 * kMinSide + kWall) {
        continue;
      }
      if (best < 0 || r.area() > regions[static_cast<std::size_t>(best)].area()) {
        best = i;
      }
    }
    if (best < 0) {
      break;
    }
    const Rect r = regions[static_cast<std::size_t>(best)];
    const bool vertical = r.w() >= r.h();
    const int lo = vertical ? r.x0 : r.y0;
    const int len = vertical ? r.w() : r.h();
    const int lo_cut = lo + std::max(kMinSide, len * 3 / 10);
    const int hi_cut = lo + std::min(len - kMinSide - kWall, len * 7 / 10 - kWall);
    const int pos = uniform_int(rng, lo_cut, std::max(lo_cut, hi_cut));
    Rect a = r;
    Rect b = r;
    if (vertical) {
      a.x1 = pos - 1;
      b.x0 = pos + kWall;
      splits.push_back({true, pos, kWall, r.y0, r.y1});
    } else {
      a.y1 = pos - 1;
      b.y0 = pos + kWall;
      splits.push_back({false, pos, kWall, r.x0, r.x1});
    }
    regions[static_cast<std::size_t>(best)] = a;
    regions.push_back(b);
  }

  for (const Rect & r : regions) {
    fill(map, r, Cell::Free);
  }

  // one door per split; each split separates two connected subtrees, so the
  // rooms end up connected
  doors.clear();
  for (const Split & s : splits) {
    const int span = s.hi - s.lo + 1;
    const int door = std::max(1, std::min(spec.corridor_width, span - 2));
    const int margin = 3;
    auto side_clear = [&](int start) {
        for (int t = start - margin; t < start + door + margin; ++t) {
          const GridIndex before = s.vertical ? GridIndex{s.pos - 1, t} : GridIndex{t, s.pos - 1};
          const GridIndex after = s.vertical ? GridIndex{s.pos + s.thickness, t} :
            GridIndex{t, s.pos + s.thickness};
          if (!map.free(before) || !map.free(after)) {
            return false;
          }
        }
        return true;
      };
    int start = uniform_int(rng, s.lo, std::max(s.lo, s.hi - door + 1));
    for (int tries = 0; tries < 64 && !side_clear(start); ++tries) {
      start = uniform_int(rng, s.lo, std::max(s.lo, s.hi - door + 1));
    }
    Rect d = s.vertical ? Rect{s.pos, start, s.pos + s.thickness - 1, start + door - 1} :
      Rect{start, s.pos, start + door - 1, s.pos + s.thickness - 1};
    fill(map, d, Cell::Free);
    doors.push_back(d);
  }

  if (spec.obstacle_density > 0.0) {
    const int keep_clear = spec.corridor_width / 2 + 4;
    for (const Rect & room : regions) {
      const long target = static_cast<long>(spec.obstacle_density * static_cast<double>(room.area()));
      long covered = 0;
      for (int tries = 0; tries < 400 && covered < target; ++tries) {
        const int bw = uniform_int(rng, 3, 12);
        const int bh = uniform_int(rng, 3, 12);
        if (bw > room.w() - 2 || bh > room.h() - 2) {
          continue;
        }
        const int x0 = uniform_int(rng, room.x0, room.x1 - bw + 1);
        const int y0 = uniform_int(rng, room.y0, room.y1 - bh + 1);
        const Rect block{x0, y0, x0 + bw - 1, y0 + bh - 1};
        bool near_door = false;
        for (const Rect & d : doors) {
          if (block.x0 <= d.x1 + keep_clear && block.x1 >= d.x0 - keep_clear &&
            block.y0 <= d.y1 + keep_clear && block.y1 >= d.y0 - keep_clear)
          {
            near_door = true;
            break;
          }
        }
        if (near_door) {
          continue;
        }
        for (int y = block.y0; y <= block.y1; ++y) {
          for (int x = block.x0; x <= block.x1; ++x) {
            if (map.free({x, y})) {
              map.set({x, y}, Cell::Occupied);
              ++covered;
            }
          }
        }
      }
    }
  }
  return map;
}

}  // namespace detail

/// Rooms from a recursive split of the interior, joined through doors in the
/// dividing walls, then cluttered with rectangular obstacles. Free pockets cut
/// off from the main component are filled in. Deterministic in `spec.seed`.
inline GridMap generate_map(const MapGenSpec & spec)
{
  validate(spec);
  constexpr int kAttempts = 16;
  std::vector<detail::Rect> doors;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(attempt)));
    GridMap map = detail::generate_attempt(spec, rng, doors);
    auto [label, sizes] = free_components(map);
    if (sizes.empty()) {
      continue;
    }
    const auto largest = static_cast<int>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    if (static_cast<double>(sizes[static_cast<std::size_t>(largest)]) <
      0.2 * static_cast<double>(map.size()))
    {
      continue;
    }
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (label[i] >= 0 && label[i] != largest) {
        map.set(map.cell_at(i), Cell::Occupied);
      }
    }
    return map;
  }
  throw Error(
    ErrorCode::GenerationFailed,
    "no attempt produced a free component covering 20% of the map");
}

}  // namespace vantage
