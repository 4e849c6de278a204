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

#include "vantage/grid.hpp"

namespace vantage
{

/// Wraps an angle to [-pi, pi). An input of exactly +pi maps to -pi.
inline double wrap_angle(double a)
{
  double r = std::remainder(a, 2.0 * std::numbers::pi);
  if (r >= std::numbers::pi) {
    r -= 2.0 * std::numbers::pi;
  }
  if (r < -std::numbers::pi) {
    r = -std::numbers::pi;
  }
  return r;
}

/// Planar agent state; theta is kept wrapped to [-pi, pi).
struct Pose
{
  double x{0.0};
  double y{0.0};
  double theta{0.0};

  Pose() = default;
  Pose(double x_, double y_, double theta_)
  : x(x_), y(y_), theta(wrap_angle(theta_)) {}

  WorldPoint position() const noexcept {return {x, y};}

  friend bool operator==(const Pose &, const Pose &) = default;
};

/// World-frame direction from `from` to `to`.
inline double bearing(WorldPoint from, WorldPoint to)
{
  return std::atan2(to.y - from.y, to.x - from.x);
}

}  // namespace vantage
