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
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "vantage/error.hpp"
#include "vantage/grid.hpp"
#include "vantage/pose.hpp"

namespace vantage
{

/// Policy output u = (u1, u2, u3). u1 in [0, 1] selects forward (<= 0.5) or
/// rotate (> 0.5); u2 in [0, 1] scales translation; u3 in [-1, 1] scales
/// rotation. Components are clamped on construction; non-finite ones become 0.
class Action
{
public:
  Action() = default;
  Action(double u1, double u2, double u3)
  : u1_(clamp(u1, 0.0, 1.0)), u2_(clamp(u2, 0.0, 1.0)), u3_(clamp(u3, -1.0, 1.0)) {}

  static Action forward(double u2) {return {0.0, u2, 0.0};}
  static Action rotate(double u3) {return {1.0, 0.0, u3};}

  double u1() const noexcept {return u1_;}
  double u2() const noexcept {return u2_;}
  double u3() const noexcept {return u3_;}

  friend bool operator==(const Action &, const Action &) = default;

private:
  static double clamp(double v, double lo, double hi)
  {
    return std::isfinite(v) ? std::clamp(v, lo, hi) : 0.0;
  }

  double u1_{0.0};
  double u2_{0.0};
  double u3_{0.0};
};

struct MotionConfig
{
  double s_max{0.35};                  // meters per step
  double phi_max{std::numbers::pi / 4};  // radians per step
};

inline void validate(const MotionConfig & cfg)
{
  if (!(cfg.s_max > 0.0) || !(cfg.phi_max > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "s_max and phi_max must be positive");
  }
}

enum class CollisionMode
{
  Slide,   // collide and slide along the obstacle
  Stop,    // collide and stop at contact
  Strict,  // any collision ends the episode
};

constexpr std::string_view to_string(CollisionMode mode)
{
  switch (mode) {
    case CollisionMode::Slide: return "slide";
    case CollisionMode::Stop: return "stop";
    case CollisionMode::Strict: return "strict";
  }
  return "unknown";
}

inline CollisionMode parse_collision_mode(std::string_view name)
{
  for (CollisionMode m : {CollisionMode::Slide, CollisionMode::Stop, CollisionMode::Strict}) {
    if (name == to_string(m)) {
      return m;
    }
  }
  throw Error(ErrorCode::UnknownMode,
    "unknown collision mode '" + std::string(name) + "' (valid: slide, stop, strict)");
}

struct Forward
{
  double distance;
};

struct Rotate
{
  double angle;
};

using MotionCommand = std::variant<Forward, Rotate>;

inline MotionCommand interpret(const Action & a, const MotionConfig & cfg)
{
  if (a.u1() <= 0.5) {
    return Forward{a.u2() * cfg.s_max};
  }
  return Rotate{a.u3() * cfg.phi_max};
}

struct StepResult
{
  Pose pose;
  bool collided{false};
};

namespace detail
{

inline WorldPoint advance(WorldPoint p, double dx, double dy) {return {p.x + dx, p.y + dy};}

// Largest prefix of p0 -> p0 + (dx, dy) that ends `margin` before the first
// blocked point; returns the travelled fraction.
inline double contact_fraction(const GridMap & map, WorldPoint p0, double dx, double dy, double margin)
{
  const double len = std::hypot(dx, dy);
  const auto t = first_blocked(map, p0, advance(p0, dx, dy));
  if (!t) {
    return 1.0;
  }
  if (len <= 0.0) {
    return 0.0;
  }
  double frac = std::max(0.0, (*t * len - margin) / len);
  // guard against rounding at the contact point
  while (frac > 0.0 && !segment_free(map, p0, advance(p0, frac * dx, frac * dy))) {
    frac = std::max(0.0, frac - margin / len);
  }
  return frac;
}

}  // namespace detail

/// Applies one action. Translations are swept against `map`; on obstruction
/// the collision mode decides the outcome:
///  - Slide: take the larger free single-axis component of the motion; when
///    neither axis is free, stop at contact as in Stop.
///  - Stop: advance to resolution/10 short of the first blocked point.
///  - Strict: stay put; the caller ends the episode.
inline StepResult step_pose(
  const GridMap & map, const Pose & pose, const Action & action, const MotionConfig & cfg,
  CollisionMode mode)
{
  validate(cfg);
  if (!is_free(map, pose.position())) {
    throw Error(ErrorCode::InvalidStartPose, "pose lies in an occupied cell");
  }
  const MotionCommand cmd = interpret(action, cfg);
  if (const auto * rot = std::get_if<Rotate>(&cmd)) {
    return {Pose(pose.x, pose.y, pose.theta + rot->angle), false};
  }

  const double s = std::get<Forward>(cmd).distance;
  const WorldPoint p0 = pose.position();
  const double dx = s * std::cos(pose.theta);
  const double dy = s * std::sin(pose.theta);
  const WorldPoint p1 = detail::advance(p0, dx, dy);
  if (segment_free(map, p0, p1)) {
    return {Pose(p1.x, p1.y, pose.theta), false};
  }

  const double margin = map.resolution() / 10.0;
  switch (mode) {
    case CollisionMode::Strict:
      return {pose, true};
    case CollisionMode::Slide: {
        const bool x_ok = dx != 0.0 && segment_free(map, p0, detail::advance(p0, dx, 0.0));
        const bool y_ok = dy != 0.0 && segment_free(map, p0, detail::advance(p0, 0.0, dy));
        if (x_ok && (!y_ok || std::abs(dx) >= std::abs(dy))) {
          return {Pose(p0.x + dx, p0.y, pose.theta), true};
        }
        if (y_ok) {
          return {Pose(p0.x, p0.y + dy, pose.theta), true};
        }
        [[fallthrough]];
      }
    case CollisionMode::Stop: {
        const double frac = detail::contact_fraction(map, p0, dx, dy, margin);
        const WorldPoint p = detail::advance(p0, frac * dx, frac * dy);
        return {Pose(p.x, p.y, pose.theta), true};
      }
  }
  return {pose, true};
}

}  // namespace vantage
