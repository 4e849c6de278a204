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

#include "vantage/grid.hpp"

namespace vantage
{

/// Default agent radius used for configuration-space inflation, meters.
inline constexpr double kDefaultAgentRadius = 0.18;

/// A map as seen by the simulator: the raw occupancy used for sensing and the
/// inflated copy used for planning and collision checks.
struct Scene
{
  GridMap sensing;
  GridMap traversable;
  double agent_radius{0.0};
};

inline Scene make_scene(GridMap raw, double agent_radius = kDefaultAgentRadius)
{
  GridMap inflated = inflate(raw, agent_radius);
  return Scene{std::move(raw), std::move(inflated), agent_radius};
}

}  // namespace vantage
