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
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vantage/dynamics.hpp"
#include "vantage/error.hpp"
#include "vantage/grid.hpp"
#include "vantage/oracle.hpp"
#include "vantage/pose.hpp"
#include "vantage/random.hpp"
#include "vantage/scene.hpp"
#include "vantage/search.hpp"
#include "vantage/sensor.hpp"

namespace vantage
{

/// Episode difficulty filter: start-target straight-line distance band and
/// geodesic-to-Euclidean ratio band.
struct SamplerConfig
{
  double min_distance{3.5};
  double max_distance{4.5};
  double min_ratio{1.1};
  double max_ratio{1.5};
  int max_attempts{10000};
};

struct RewardConfig
{
  double success_reward{10.0};
  double failure_reward{-10.0};   // collision or timeout
  double orient_positive_scale{0.2};
  double nav_scale{2.5};
  double move_penalty{-0.5};
  int move_window{3};
  double move_threshold_fraction{0.25};  // of s_max
  double step_penalty{-0.05};
  int max_steps{100};
};

struct EnvConfig
{
  SensorConfig sensor;
  MotionConfig motion;
  RewardConfig reward;
};

struct EpisodeSpec
{
  std::size_t id{0};
  std::string map;   // map file reference, as recorded in the episode file
  Pose start;
  WorldPoint target;
  std::uint64_t seed{0};
  OracleResult oracle;
};

enum class Termination
{
  Running,
  Success,
  Collision,
  Timeout,
};

constexpr std::string_view to_string(Termination t)
{
  switch (t) {
    case Termination::Running: return "running";
    case Termination::Success: return "success";
    case Termination::Collision: return "collision";
    case Termination::Timeout: return "timeout";
  }
  return "unknown";
}

struct Observation
{
  std::vector<double> depth;         // normalized to [0, 1] by the sensor range
  std::array<double, 2> dp{};        // agent -> target, body frame, meters
  double dtheta{0.0};                // wrapped target bearing relative to heading
  std::array<Action, 3> last_actions{};  // most recent first, zero-filled
};

struct EnvState
{
  Pose pose;
  int k{0};
  std::vector<WorldPoint> positions;  // oldest first, at most kPositionHistory entries
  std::vector<Action> actions;        // oldest first, at most 3 entries
  bool terminated{false};
  Termination reason{Termination::Running};
  double path_length{0.0};
  int collisions{0};

  static constexpr std::size_t kPositionHistory = 4;
};

/// Individual reward terms of one transition; `total` is what the agent gets.
struct RewardTerms
{
  double terminal{0.0};
  double orient{0.0};
  double nav{0.0};
  double move{0.0};
  double step{0.0};
  double total{0.0};
};

struct StepOutcome
{
  Observation observation;
  double reward{0.0};
  bool terminated{false};
  Termination reason{Termination::Running};
  bool collided{false};
  RewardTerms terms;
};

namespace detail
{

inline std::vector<GridIndex> free_cells(const GridMap & map)
{
  std::vector<GridIndex> out;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map.free(map.cell_at(i))) {
      out.push_back(map.cell_at(i));
    }
  }
  return out;
}

}  // namespace detail

/// Rejection sampler. Start: uniform over traversable cells (placed at the
/// cell center) with uniform heading. Target: uniform over traversable cell
/// centers inside the distance band. Accepted once the geodesic ratio lies in
/// band and the inspection oracle succeeds. Deterministic in `seed`.
inline EpisodeSpec sample_episode(
  const Scene & scene, const SamplerConfig & cfg, double sensor_range, std::uint64_t seed,
  const std::vector<GridIndex> * free_cells = nullptr)
{
  const GridMap & map = scene.traversable;
  std::vector<GridIndex> owned;
  if (!free_cells) {
    owned = detail::free_cells(map);
    free_cells = &owned;
  }
  if (free_cells->empty()) {
    throw Error(ErrorCode::SamplingExhausted, "map has no traversable cells");
  }
  Rng rng(seed);
  const double res = map.resolution();
  const int reach = static_cast<int>(std::ceil(cfg.max_distance / res)) + 1;
  std::vector<GridIndex> band;
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    const GridIndex s = (*free_cells)[uniform_index(rng, free_cells->size())];
    const double heading = uniform_real(rng, -std::numbers::pi, std::numbers::pi);
    const WorldPoint sp = map.center(s);

    band.clear();
    for (int row = std::max(0, s.row - reach); row <= std::min(map.height() - 1, s.row + reach);
      ++row)
    {
      for (int col = std::max(0, s.col - reach); col <= std::min(map.width() - 1, s.col + reach);
        ++col)
      {
        const GridIndex c{col, row};
        if (!map.free(c)) {
          continue;
        }
        const double d = distance(sp, map.center(c));
        if (d >= cfg.min_distance && d <= cfg.max_distance) {
          band.push_back(c);
        }
      }
    }
    if (band.empty()) {
      continue;
    }
    const GridIndex t = band[uniform_index(rng, band.size())];
    const WorldPoint tp = map.center(t);
    const double euclid = distance(sp, tp);
    const double geo = geodesic_distance(map, s, t);
    const double ratio = geo / euclid;
    if (!(ratio >= cfg.min_ratio && ratio <= cfg.max_ratio)) {
      continue;
    }
    try {
      EpisodeSpec ep;
      ep.oracle = shortest_inspection_path(scene, sp, tp, sensor_range);
      ep.start = Pose(sp.x, sp.y, heading);
      ep.target = tp;
      ep.seed = seed;
      return ep;
    } catch (const Error & e) {
      if (e.code() != ErrorCode::NoInspectionPoint && e.code() != ErrorCode::Unreachable) {
        throw;
      }
    }
  }
  throw Error(
    ErrorCode::SamplingExhausted,
    "no episode satisfied the constraints within " + std::to_string(cfg.max_attempts) +
    " attempts");
}

inline Observation observe(
  const GridMap & sensing, const EnvState & state, WorldPoint target, const SensorConfig & cfg)
{
  Observation obs;
  const DepthScan scan = render_depth(sensing, state.pose, cfg);
  obs.depth.reserve(scan.depths.size());
  for (double d : scan.depths) {
    obs.depth.push_back(std::min(d / cfg.max_range, 1.0));
  }
  const double wx = target.x - state.pose.x;
  const double wy = target.y - state.pose.y;
  const double c = std::cos(state.pose.theta);
  const double s = std::sin(state.pose.theta);
  obs.dp = {c * wx + s * wy, -s * wx + c * wy};
  obs.dtheta = wrap_angle(std::atan2(wy, wx) - state.pose.theta);
  const std::size_t n = state.actions.size();
  for (std::size_t j = 0; j < obs.last_actions.size() && j < n; ++j) {
    obs.last_actions[j] = state.actions[n - 1 - j];
  }
  return obs;
}

/// Reward for the transition prev -> next. Terminal steps pay the terminal
/// reward only; otherwise the orientation, navigation, stagnation and step
/// terms are summed.
inline RewardTerms compute_reward_terms(
  const EnvState & prev, const EnvState & next, Termination reason, WorldPoint target,
  WorldPoint g_opt, const RewardConfig & cfg, const MotionConfig & motion)
{
  RewardTerms r;
  if (reason == Termination::Success) {
    r.terminal = r.total = cfg.success_reward;
    return r;
  }
  if (reason == Termination::Collision || reason == Termination::Timeout) {
    r.terminal = r.total = cfg.failure_reward;
    return r;
  }
  if (next.positions.empty()) {
    throw Error(ErrorCode::MissingHistory, "next state carries no position history");
  }

  const WorldPoint p = next.pose.position();
  const double tx = target.x - p.x;
  const double ty = target.y - p.y;
  const double tn = std::hypot(tx, ty);
  // unit agent->target vector dotted with the unit heading
  const double align = tn > 0.0 ?
    (tx * std::cos(next.pose.theta) + ty * std::sin(next.pose.theta)) / tn : 0.0;
  r.orient = align > 0.0 ? cfg.orient_positive_scale * align : align;

  r.nav = cfg.nav_scale * (distance(prev.pose.position(), g_opt) - distance(p, g_opt));

  // inert until `move_window` earlier positions exist
  const auto window = static_cast<std::size_t>(cfg.move_window);
  if (next.positions.size() >= window + 1) {
    const std::size_t last = next.positions.size() - 1;
    double spread = 0.0;
    for (std::size_t j = 1; j <= window; ++j) {
      spread = std::max(spread, distance(next.positions[last], next.positions[last - j]));
    }
    if (spread < cfg.move_threshold_fraction * motion.s_max) {
      r.move = cfg.move_penalty;
    }
  }
  r.step = cfg.step_penalty;
  r.total = r.orient + r.nav + r.move + r.step;
  return r;
}

inline double compute_reward(
  const EnvState & prev, const EnvState & next, Termination reason, WorldPoint target,
  WorldPoint g_opt, const RewardConfig & cfg, const MotionConfig & motion)
{
  return compute_reward_terms(prev, next, reason, target, g_opt, cfg, motion).total;
}

inline std::pair<EnvState, Observation> reset(
  const Scene & scene, const EpisodeSpec & ep, const EnvConfig & cfg)
{
  if (!is_free(scene.traversable, ep.start.position()) || !std::isfinite(ep.target.x) ||
    !std::isfinite(ep.target.y))
  {
    throw Error(ErrorCode::InvalidEpisode, "episode start is not traversable or target is invalid");
  }
  EnvState state;
  state.pose = ep.start;
  state.positions.push_back(ep.start.position());
  Observation obs = observe(scene.sensing, state, ep.target, cfg.sensor);
  return {std::move(state), std::move(obs)};
}

/// Advances `state` by one action.
inline StepOutcome step(
  const Scene & scene, EnvState & state, const EpisodeSpec & ep, const Action & action,
  CollisionMode mode, const EnvConfig & cfg)
{
  if (state.terminated) {
    throw Error(ErrorCode::SteppingTerminatedEpisode, "episode already terminated");
  }
  const EnvState prev = state;
  const StepResult moved = step_pose(scene.traversable, state.pose, action, cfg.motion, mode);

  state.path_length += distance(prev.pose.position(), moved.pose.position());
  state.pose = moved.pose;
  state.k += 1;
  state.positions.push_back(moved.pose.position());
  if (state.positions.size() > EnvState::kPositionHistory) {
    state.positions.erase(state.positions.begin());
  }
  state.actions.push_back(action);
  if (state.actions.size() > 3) {
    state.actions.erase(state.actions.begin());
  }
  if (moved.collided) {
    ++state.collisions;
  }

  Termination reason = Termination::Running;
  if (mode == CollisionMode::Strict && moved.collided) {
    reason = Termination::Collision;
  } else if (in_view(scene.sensing, state.pose, ep.target, cfg.sensor)) {
    reason = Termination::Success;
  } else if (state.k >= cfg.reward.max_steps) {
    reason = Termination::Timeout;
  }
  state.reason = reason;
  state.terminated = reason != Termination::Running;

  StepOutcome out;
  out.terms = compute_reward_terms(prev, state, reason, ep.target, ep.oracle.goal_point,
      cfg.reward, cfg.motion);
  out.reward = out.terms.total;
  out.observation = observe(scene.sensing, state, ep.target, cfg.sensor);
  out.terminated = state.terminated;
  out.reason = reason;
  out.collided = moved.collided;
  return out;
}

/// Stateful wrapper around reset/step for a single episode.
class Environment
{
public:
  Environment(const Scene & scene, EpisodeSpec episode, EnvConfig cfg, CollisionMode mode)
  : scene_(scene), episode_(std::move(episode)), cfg_(cfg), mode_(mode) {}

  Observation reset()
  {
    auto [state, obs] = vantage::reset(scene_, episode_, cfg_);
    state_ = std::move(state);
    return obs;
  }

  StepOutcome step(const Action & action)
  {
    return vantage::step(scene_, state_, episode_, action, mode_, cfg_);
  }

  const EnvState & state() const noexcept {return state_;}
  const EpisodeSpec & episode() const noexcept {return episode_;}
  const EnvConfig & config() const noexcept {return cfg_;}
  CollisionMode mode() const noexcept {return mode_;}

private:
  const Scene & scene_;
  EpisodeSpec episode_;
  EnvConfig cfg_;
  CollisionMode mode_;
  EnvState state_;
};

}  // namespace vantage
