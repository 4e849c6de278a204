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
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "vantage/dynamics.hpp"
#include "vantage/env.hpp"
#include "vantage/error.hpp"
#include "vantage/oracle.hpp"
#include "vantage/pose.hpp"
#include "vantage/random.hpp"
#include "vantage/scene.hpp"
#include "vantage/search.hpp"

namespace vantage
{

/// Anything that maps observations to actions. Policies that report
/// privileged() also receive the true agent pose and may hold the scene;
/// all others only ever see the observation.
class Policy
{
public:
  virtual ~Policy() = default;

  virtual std::string_view id() const = 0;
  virtual bool privileged() const {return false;}
  virtual void reset(const EpisodeSpec &) {}

  /// `pose` is null for non-privileged policies.
  virtual Action act(const Observation & obs, const Pose * pose, Rng & rng) = 0;
};

class RandomPolicy final : public Policy
{
public:
  std::string_view id() const override {return "random";}

  Action act(const Observation &, const Pose *, Rng & rng) override
  {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double u3 = uniform_real(rng, -1.0, 1.0);
    return {u1, u2, u3};
  }
};

struct AvoiderConfig
{
  double align_threshold{std::numbers::pi / 8};
  double clearance{0.5};       // meters
  double sensor_range{5.0};    // meters; de-normalizes the depth scan
  double phi_max{std::numbers::pi / 4};
};

/// Goal-follower style reactive policy: turn to the target, drive when the
/// central third of the scan is clear, otherwise turn toward the deeper side.
class ObstacleAvoider final : public Policy
{
public:
  explicit ObstacleAvoider(AvoiderConfig cfg = {})
  : cfg_(cfg) {}

  std::string_view id() const override {return "avoider";}

  Action act(const Observation & obs, const Pose *, Rng &) override
  {
    if (std::abs(obs.dtheta) > cfg_.align_threshold) {
      return Action::rotate(std::clamp(obs.dtheta / cfg_.phi_max, -1.0, 1.0));
    }
    const std::size_t n = obs.depth.size();
    if (n == 0) {
      return Action::forward(1.0);
    }
    const std::size_t lo = n / 3;
    const std::size_t hi = std::max(lo + 1, n - n / 3);
    const double nearest = *std::min_element(obs.depth.begin() + static_cast<long>(lo),
        obs.depth.begin() + static_cast<long>(hi));
    if (nearest * cfg_.sensor_range > cfg_.clearance) {
      return Action::forward(1.0);
    }
    // rays above the middle index point counter-clockwise of the heading (left)
    double right = 0.0;
    double left = 0.0;
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) {
      right += obs.depth[i];
      left += obs.depth[n - 1 - i];
    }
    return Action::rotate(left >= right ? 1.0 : -1.0);
  }

private:
  AvoiderConfig cfg_;
};

struct PursuitConfig
{
  double arrive_tolerance{1e-6};   // meters
  double heading_tolerance{1e-6};  // radians
};

/// Rotate-then-drive controller along the corner vertices of a grid path.
/// After the last vertex it keeps turning toward `target`.
class PathFollower
{
public:
  PathFollower(MotionConfig motion, PursuitConfig cfg)
  : motion_(motion), cfg_(cfg) {}

  void set_path(const GridMap & map, const Path & path, WorldPoint target)
  {
    waypoints_.clear();
    next_ = 0;
    target_ = target;
    const auto & c = path.cells;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const bool corner = i == 0 || i + 1 == c.size() ||
        (c[i].col - c[i - 1].col != c[i + 1].col - c[i].col) ||
        (c[i].row - c[i - 1].row != c[i + 1].row - c[i].row);
      if (corner) {
        waypoints_.push_back(map.center(c[i]));
      }
    }
  }

  bool finished() const noexcept {return next_ >= waypoints_.size();}
  std::size_t next_waypoint() const noexcept {return next_;}
  const std::vector<WorldPoint> & waypoints() const noexcept {return waypoints_;}

  Action act(const Pose & pose)
  {
    const WorldPoint p = pose.position();
    while (next_ < waypoints_.size() && distance(p, waypoints_[next_]) <= cfg_.arrive_tolerance) {
      ++next_;
    }
    if (finished()) {
      return turn_to(pose, bearing(p, target_));
    }
    const WorldPoint wp = waypoints_[next_];
    const double err = wrap_angle(bearing(p, wp) - pose.theta);
    if (std::abs(err) > cfg_.heading_tolerance) {
      return Action::rotate(std::clamp(err / motion_.phi_max, -1.0, 1.0));
    }
    return Action::forward(std::min(1.0, distance(p, wp) / motion_.s_max));
  }

private:
  Action turn_to(const Pose & pose, double heading) const
  {
    const double err = wrap_angle(heading - pose.theta);
    return Action::rotate(std::clamp(err / motion_.phi_max, -1.0, 1.0));
  }

  MotionConfig motion_;
  PursuitConfig cfg_;
  std::vector<WorldPoint> waypoints_;
  std::size_t next_{0};
  WorldPoint target_;
};

/// Privileged reference: follows the shortest navigation path to the target
/// itself and succeeds whenever the target happens to come into view.
class GreedyNavigator final : public Policy
{
public:
  GreedyNavigator(const Scene & scene, MotionConfig motion, PursuitConfig cfg = {})
  : scene_(scene), follower_(motion, cfg) {}

  std::string_view id() const override {return "navigator";}
  bool privileged() const override {return true;}

  void reset(const EpisodeSpec & ep) override
  {
    path_ = shortest_navigation_path(scene_.traversable, ep.start.position(), ep.target);
    follower_.set_path(scene_.traversable, path_, ep.target);
  }

  Action act(const Observation &, const Pose * pose, Rng &) override
  {
    if (!pose) {
      throw Error(ErrorCode::InvalidArgument, "navigator needs the agent pose");
    }
    return follower_.act(*pose);
  }

  const Path & path() const noexcept {return path_;}

private:
  const Scene & scene_;
  PathFollower follower_;
  Path path_;
};

/// Privileged reference: follows the precomputed shortest inspection path,
/// then turns toward the target.
class OracleInspector final : public Policy
{
public:
  OracleInspector(const Scene & scene, MotionConfig motion, PursuitConfig cfg = {})
  : scene_(scene), follower_(motion, cfg) {}

  std::string_view id() const override {return "inspector";}
  bool privileged() const override {return true;}

  void reset(const EpisodeSpec & ep) override
  {
    if (ep.oracle.inspection_path.empty()) {
      throw Error(ErrorCode::NoInspectionPoint, "episode carries no inspection path");
    }
    follower_.set_path(scene_.traversable, ep.oracle.inspection_path, ep.target);
  }

  Action act(const Observation &, const Pose * pose, Rng &) override
  {
    if (!pose) {
      throw Error(ErrorCode::InvalidArgument, "inspector needs the agent pose");
    }
    return follower_.act(*pose);
  }

private:
  const Scene & scene_;
  PathFollower follower_;
};

inline constexpr std::array<std::string_view, 4> kPolicyIds{
  "random", "avoider", "navigator", "inspector"};

inline std::unique_ptr<Policy> make_policy(
  std::string_view id, const Scene & scene, const EnvConfig & cfg)
{
  if (id == "random") {
    return std::make_unique<RandomPolicy>();
  }
  if (id == "avoider") {
    AvoiderConfig a;
    a.sensor_range = cfg.sensor.max_range;
    a.phi_max = cfg.motion.phi_max;
    return std::make_unique<ObstacleAvoider>(a);
  }
  if (id == "navigator") {
    return std::make_unique<GreedyNavigator>(scene, cfg.motion);
  }
  if (id == "inspector") {
    return std::make_unique<OracleInspector>(scene, cfg.motion);
  }
  throw Error(ErrorCode::UnknownPolicy,
    "unknown policy '" + std::string(id) + "' (valid: random, avoider, navigator, inspector)");
}

}  // namespace vantage
