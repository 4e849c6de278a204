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


#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace
{

using namespace vantage;
constexpr double kPi = std::numbers::pi;

EnvState state_at(Pose pose, std::vector<WorldPoint> history = {})
{
  EnvState s;
  s.pose = pose;
  s.positions = std::move(history);
  s.positions.push_back(pose.position());
  s.k = static_cast<int>(s.positions.size()) - 1;
  return s;
}

double reward(const EnvState & prev, const EnvState & next, WorldPoint target, WorldPoint g,
  Termination reason = Termination::Running)
{
  return compute_reward(prev, next, reason, target, g, RewardConfig{}, MotionConfig{});
}

// Hand-built transitions. Target and g_opt positions are chosen so that each
// term is easy to read off.
TEST(Reward, Table)
{
  const WorldPoint target{5.0, 0.0};
  const WorldPoint g{3.0, 0.0};
  const Pose origin(0.0, 0.0, 0.0);

  struct Row
  {
    const char * name;
    EnvState prev;
    EnvState next;
    Termination reason;
    double expected;
  };
  const std::vector<Row> rows = {
    {"success", state_at(origin), state_at(origin), Termination::Success, 10.0},
    {"collision", state_at(origin), state_at(origin), Termination::Collision, -10.0},
    {"timeout", state_at(origin), state_at(origin), Termination::Timeout, -10.0},
    // facing the target, no progress, short history
    {"aligned", state_at(origin), state_at(origin, {{0.0, 0.0}}), Termination::Running,
      0.2 - 0.05},
    // 0.35 m toward g_opt while facing away from the target
    {"away-facing progress", state_at(Pose(0.0, 0.0, kPi)),
      state_at(Pose(0.35, 0.0, kPi), {{0.0, 0.0}}), Termination::Running,
      -1.0 + 2.5 * 0.35 - 0.05},
    // perpendicular heading: zero orientation term
    {"perpendicular", state_at(origin), state_at(Pose(0.0, 0.0, kPi / 2), {{0.0, 0.0}}),
      Termination::Running, -0.05},
    // 60 degrees off: 0.2 * cos(60)
    {"sixty degrees", state_at(origin), state_at(Pose(0.0, 0.0, kPi / 3), {{0.0, 0.0}}),
      Termination::Running, 0.2 * 0.5 - 0.05},
    // 120 degrees off: negative alignment is not scaled
    {"one-twenty degrees", state_at(origin),
      state_at(Pose(0.0, 0.0, 2 * kPi / 3), {{0.0, 0.0}}), Termination::Running, -0.5 - 0.05},
    // retreat from g_opt by 0.2 m while facing the target
    {"retreat", state_at(origin), state_at(Pose(-0.2, 0.0, 0.0), {{0.0, 0.0}}),
      Termination::Running, 0.2 - 2.5 * 0.2 - 0.05},
    // three rotations in place: the fourth position closes the window
    {"stagnation", state_at(origin, {{0, 0}, {0, 0}}),
      state_at(origin, {{0, 0}, {0, 0}, {0, 0}}), Termination::Running, 0.2 - 0.5 - 0.05},
    // only two rotations: window not yet full
    {"short window", state_at(origin, {{0, 0}}), state_at(origin, {{0, 0}, {0, 0}}),
      Termination::Running, 0.2 - 0.05},
    // max displacement in window just under s_max / 4 = 0.0875
    {"below threshold", state_at(Pose(0.087, 0.0, 0.0), {{0, 0}, {0.03, 0}, {0.06, 0}}),
      state_at(Pose(0.087, 0.0, 0.0), {{0, 0}, {0.03, 0}, {0.06, 0}}), Termination::Running,
      0.2 - 0.5 - 0.05},
    // just over the threshold: no penalty; progress toward g_opt is 0.001 m
    {"above threshold", state_at(Pose(0.087, 0.0, 0.0), {{0, 0}, {0.03, 0}}),
      state_at(Pose(0.088, 0.0, 0.0), {{0, 0}, {0.03, 0}, {0.087, 0}}), Termination::Running,
      0.2 + 2.5 * 0.001 - 0.05},
    // an old far position keeps the window open
    {"old excursion", state_at(origin, {{0.3, 0}, {0, 0}}),
      state_at(origin, {{0.3, 0}, {0, 0}, {0, 0}}), Termination::Running, 0.2 - 0.05},
    // a terminal step pays the terminal reward only, even when stagnant
    {"stagnant success", state_at(origin, {{0, 0}, {0, 0}}),
      state_at(origin, {{0, 0}, {0, 0}, {0, 0}}), Termination::Success, 10.0},
  };
  ASSERT_GE(rows.size(), 12u);
  for (const auto & r : rows) {
    EXPECT_NEAR(reward(r.prev, r.next, target, g, r.reason), r.expected, 1e-9) << r.name;
  }
}

TEST(Reward, Terms)
{
  const auto t = compute_reward_terms(state_at(Pose(0.0, 0.0, kPi)),
      state_at(Pose(0.35, 0.0, kPi), {{0.0, 0.0}}), Termination::Running, {5.0, 0.0}, {3.0, 0.0},
      {}, {});
  EXPECT_NEAR(t.orient, -1.0, 1e-12);
  EXPECT_NEAR(t.nav, 0.875, 1e-12);
  EXPECT_EQ(t.move, 0.0);
  EXPECT_EQ(t.step, -0.05);
  EXPECT_NEAR(t.total, t.orient + t.nav + t.move + t.step, 1e-15);
}

TEST(Reward, MissingHistory)
{
  EnvState empty;
  EXPECT_THROW(reward(state_at(Pose()), empty, {1, 0}, {1, 0}), Error);
}

TEST(Reward, NavTermTelescopes)
{
  const Scene sc = make_scene(testutil::generated(31));
  const auto free = vantage::detail::free_cells(sc.traversable);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const WorldPoint start = sc.traversable.center(free[rng() % free.size()]);
    const WorldPoint g = sc.traversable.center(free[rng() % free.size()]);
    EnvState s = state_at(Pose(start.x, start.y, 2 * kPi * u(rng) - kPi));
    double sum = 0.0;
    for (int k = 0; k < 100; ++k) {
      EnvState next = s;
      const auto r = step_pose(sc.traversable, s.pose, Action(u(rng), u(rng), 2 * u(rng) - 1),
          {}, CollisionMode::Slide);
      next.pose = r.pose;
      next.positions.push_back(r.pose.position());
      sum += compute_reward_terms(s, next, Termination::Running, {0, 0}, g, {}, {}).nav;
      s = next;
    }
    const double expected = 2.5 * (distance(start, g) - distance(s.pose.position(), g));
    EXPECT_NEAR(sum, expected, 1e-9);
  }
}

// Open room 10 m x 10 m with an interior wall segment for collision tests.
Scene room_scene()
{
  GridMap m(200, 200, 0.05);
  for (int i = 0; i < 200; ++i) {
    m.set({i, 0}, Cell::Occupied);
    m.set({i, 199}, Cell::Occupied);
    m.set({0, i}, Cell::Occupied);
    m.set({199, i}, Cell::Occupied);
  }
  for (int r = 60; r < 140; ++r) {
    m.set({120, r}, Cell::Occupied);
  }
  return make_scene(std::move(m), 0.0);
}

EpisodeSpec episode_in(const Scene & sc, Pose start, WorldPoint target)
{
  EpisodeSpec ep;
  ep.start = start;
  ep.target = target;
  ep.oracle = shortest_inspection_path(sc, start.position(), target, 5.0);
  return ep;
}

TEST(Env, ResetState)
{
  for (const auto & s : testutil::episodes(10)) {
    const auto [state, obs] = reset(*s.scene, s.ep, EnvConfig{});
    EXPECT_EQ(state.k, 0);
    EXPECT_EQ(state.path_length, 0.0);
    EXPECT_EQ(state.positions.size(), 1u);
    for (const auto & a : obs.last_actions) {
      EXPECT_EQ(a, Action());
    }
    const double d = std::hypot(obs.dp[0], obs.dp[1]);
    EXPECT_GE(d, 3.5 - 1e-9);
    EXPECT_LE(d, 4.5 + 1e-9);
  }
  const Scene sc = room_scene();
  EpisodeSpec bad;
  bad.start = Pose(6.02, 5.0, 0.0);  // inside the wall
  bad.target = {2.0, 2.0};
  EXPECT_THROW(reset(sc, bad, EnvConfig{}), Error);
}

TEST(Env, ObserveFrames)
{
  const Scene sc = room_scene();
  EnvState s = state_at(Pose(2.0, 2.0, 0.0));
  const auto obs = observe(sc.sensing, s, {4.0, 2.0}, {});
  EXPECT_NEAR(obs.dtheta, 0.0, 1e-12);
  EXPECT_NEAR(obs.dp[0], 2.0, 1e-12);
  EXPECT_NEAR(obs.dp[1], 0.0, 1e-12);
  for (double d : obs.depth) {
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
  }
  const auto back = observe(sc.sensing, state_at(Pose(2.0, 2.0, 0.0)), {0.5, 2.0}, {});
  EXPECT_DOUBLE_EQ(back.dtheta, -kPi);
  // body-frame left is +y
  const auto left = observe(sc.sensing, state_at(Pose(2.0, 2.0, kPi / 2)), {2.0, 3.0}, {});
  EXPECT_NEAR(left.dp[0], 1.0, 1e-12);
  EXPECT_NEAR(left.dp[1], 0.0, 1e-12);
  const auto side = observe(sc.sensing, state_at(Pose(2.0, 2.0, 0.0)), {2.0, 3.0}, {});
  EXPECT_NEAR(side.dp[1], 1.0, 1e-12);
  EXPECT_NEAR(side.dtheta, kPi / 2, 1e-12);
}

TEST(Env, RotationBringsTargetIntoView)
{
  const Scene sc = room_scene();
  // target behind the agent, slightly off axis
  const WorldPoint target{2.0 + std::cos(kPi - 0.1), 2.0 + std::sin(kPi - 0.1)};
  Environment env(sc, episode_in(sc, Pose(2.0, 2.0, 0.0), target), {}, CollisionMode::Strict);
  env.reset();
  for (int k = 1; k <= 2; ++k) {
    const auto out = env.step(Action::rotate(1.0));
    EXPECT_FALSE(out.terminated);
    EXPECT_EQ(out.reason, Termination::Running);
  }
  const auto out = env.step(Action::rotate(1.0));
  EXPECT_TRUE(out.terminated);
  EXPECT_EQ(out.reason, Termination::Success);
  EXPECT_EQ(out.reward, 10.0);
  EXPECT_THROW(env.step(Action::rotate(1.0)), Error);
}

TEST(Env, StrictCollisionEndsEpisode)
{
  const Scene sc = room_scene();
  const Pose start(5.9, 5.0, 0.0);  // wall face at x = 6.0
  Environment env(sc, episode_in(sc, start, {2.0, 5.0}), {}, CollisionMode::Strict);
  env.reset();
  const auto out = env.step(Action::forward(1.0));
  EXPECT_TRUE(out.collided);
  EXPECT_EQ(out.reason, Termination::Collision);
  EXPECT_EQ(out.reward, -10.0);
  EXPECT_EQ(env.state().pose.x, start.x);
  EXPECT_EQ(env.state().pose.y, start.y);
  EXPECT_EQ(env.state().collisions, 1);
}

TEST(Env, TimeoutAtStepLimit)
{
  const Scene sc = room_scene();
  // target hidden behind the wall; the agent stands still facing away
  EpisodeSpec ep = episode_in(sc, Pose(4.0, 5.0, kPi), {6.5, 5.0});
  Environment env(sc, ep, {}, CollisionMode::Slide);
  env.reset();
  for (int k = 1; k < 100; ++k) {
    const auto out = env.step(Action::forward(0.0));
    ASSERT_FALSE(out.terminated) << k;
    EXPECT_LT(out.reward, 0.0);
  }
  const auto out = env.step(Action::forward(0.0));
  EXPECT_EQ(out.reason, Termination::Timeout);
  EXPECT_EQ(out.reward, -10.0);
  EXPECT_EQ(env.state().k, 100);
}

TEST(Env, LastActionsMostRecentFirst)
{
  const Scene sc = room_scene();
  Environment env(sc, episode_in(sc, Pose(4.0, 5.0, kPi), {6.5, 5.0}), {}, CollisionMode::Slide);
  env.reset();
  env.step(Action(0.9, 0.1, 0.1));
  env.step(Action(0.9, 0.2, 0.2));
  env.step(Action(0.9, 0.3, -0.2));
  const auto out = env.step(Action(0.9, 0.4, -0.1));
  EXPECT_EQ(out.observation.last_actions[0], Action(0.9, 0.4, -0.1));
  EXPECT_EQ(out.observation.last_actions[1], Action(0.9, 0.3, -0.2));
  EXPECT_EQ(out.observation.last_actions[2], Action(0.9, 0.2, 0.2));
}

struct Rollout
{
  std::vector<Pose> poses;
  std::vector<double> rewards;
  std::vector<StepOutcome> outcomes;
  Termination reason;
  double path_length;
};

Rollout roll(const Scene & sc, const EpisodeSpec & ep, CollisionMode mode, std::uint64_t seed)
{
  Rollout r;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Environment env(sc, ep, {}, mode);
  env.reset();
  r.poses.push_back(env.state().pose);
  while (!env.state().terminated) {
    auto out = env.step(Action(u(rng), u(rng), 2 * u(rng) - 1));
    r.poses.push_back(env.state().pose);
    r.rewards.push_back(out.reward);
    r.outcomes.push_back(std::move(out));
  }
  r.reason = env.state().reason;
  r.path_length = env.state().path_length;
  return r;
}

TEST(Env, RolloutProperties)
{
  const EnvConfig cfg;
  const double lo = -1.0 - 2.5 * 0.35 - 0.5 - 0.05;
  const double hi = 0.2 + 2.5 * 0.35 - 0.05;
  int successes = 0;
  for (const auto & s : testutil::episodes(24, 8)) {
    for (auto mode : {CollisionMode::Slide, CollisionMode::Stop, CollisionMode::Strict}) {
      const Rollout a = roll(*s.scene, s.ep, mode, s.ep.seed);
      const Rollout b = roll(*s.scene, s.ep, mode, s.ep.seed);
      // determinism
      ASSERT_EQ(a.poses.size(), b.poses.size());
      for (std::size_t i = 0; i < a.poses.size(); ++i) {
        EXPECT_EQ(a.poses[i].x, b.poses[i].x);
        EXPECT_EQ(a.poses[i].y, b.poses[i].y);
        EXPECT_EQ(a.poses[i].theta, b.poses[i].theta);
      }
      EXPECT_EQ(a.rewards, b.rewards);
      EXPECT_EQ(a.reason, b.reason);

      // path length accounting
      double len = 0.0;
      for (std::size_t i = 1; i < a.poses.size(); ++i) {
        len += distance(a.poses[i - 1].position(), a.poses[i].position());
      }
      EXPECT_NEAR(a.path_length, len, 1e-12);

      // success exactly at the first in-view pose
      for (std::size_t i = 1; i < a.poses.size(); ++i) {
        const bool seen = in_view(s.scene->sensing, a.poses[i], s.ep.target, cfg.sensor);
        const auto & out = a.outcomes[i - 1];
        if (out.reason == Termination::Success) {
          EXPECT_TRUE(seen);
        } else if (!(mode == CollisionMode::Strict && out.collided)) {
          EXPECT_FALSE(seen);
        }
        if (!out.terminated) {
          EXPECT_GE(out.reward, lo - 1e-12);
          EXPECT_LE(out.reward, hi + 1e-12);
        }
      }
      EXPECT_LE(a.outcomes.size(), 100u);
      successes += a.reason == Termination::Success;
    }
  }
  EXPECT_GT(successes, 0);
}

TEST(Sampler, PostConditions)
{
  for (const auto & s : testutil::episodes(30, 3)) {
    const GridMap & m = s.scene->traversable;
    const double euclid = distance(s.ep.start.position(), s.ep.target);
    EXPECT_GE(euclid, 3.5);
    EXPECT_LE(euclid, 4.5);
    const double ratio = geodesic_distance(m, m.cell_of(s.ep.start.position()),
        m.cell_of(s.ep.target)) / euclid;
    EXPECT_GE(ratio, 1.1);
    EXPECT_LE(ratio, 1.5);
    EXPECT_TRUE(m.free(m.cell_of(s.ep.start.position())));
    EXPECT_TRUE(m.free(m.cell_of(s.ep.target)));
  }
}

TEST(Sampler, Deterministic)
{
  const auto & sc = testutil::scenes().front();
  const auto a = sample_episode(sc, {}, 5.0, 1234);
  const auto b = sample_episode(sc, {}, 5.0, 1234);
  EXPECT_EQ(a.start.x, b.start.x);
  EXPECT_EQ(a.start.y, b.start.y);
  EXPECT_EQ(a.start.theta, b.start.theta);
  EXPECT_EQ(a.target.x, b.target.x);
  EXPECT_EQ(a.target.y, b.target.y);
  EXPECT_EQ(a.oracle.inspection_path.cells, b.oracle.inspection_path.cells);
}

TEST(Sampler, OpenMapExhausts)
{
  GridMap m(200, 200, 0.05);
  SamplerConfig cfg;
  cfg.max_attempts = 300;
  try {
    sample_episode(make_scene(m), cfg, 5.0, 1);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::SamplingExhausted);
  }
}

}  // namespace
