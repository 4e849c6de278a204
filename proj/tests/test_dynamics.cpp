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

#include "oracles/oracles.hpp"
#include "test_util.hpp"

namespace
{

using namespace vantage;
constexpr double kPi = std::numbers::pi;

TEST(Action, ClampsAndSanitizes)
{
  const Action a(2.0, -1.0, 5.0);
  EXPECT_EQ(a.u1(), 1.0);
  EXPECT_EQ(a.u2(), 0.0);
  EXPECT_EQ(a.u3(), 1.0);
  const Action n(std::nan(""), INFINITY, -INFINITY);
  EXPECT_EQ(n.u1(), 0.0);
  EXPECT_EQ(n.u2(), 0.0);
  EXPECT_EQ(n.u3(), 0.0);
}

TEST(Interpret, ReferenceExamples)
{
  const MotionConfig cfg;
  const auto f = interpret(Action(0.3, 1.0, 0.7), cfg);
  ASSERT_TRUE(std::holds_alternative<Forward>(f));
  EXPECT_DOUBLE_EQ(std::get<Forward>(f).distance, 0.35);

  const auto r = interpret(Action(0.6, 0.4, 1.0), cfg);
  ASSERT_TRUE(std::holds_alternative<Rotate>(r));
  EXPECT_DOUBLE_EQ(std::get<Rotate>(r).angle, kPi / 4);

  const auto b = interpret(Action(0.5, 0.0, 0.0), cfg);
  ASSERT_TRUE(std::holds_alternative<Forward>(b));
  EXPECT_DOUBLE_EQ(std::get<Forward>(b).distance, 0.0);
}

TEST(CollisionMode, Parsing)
{
  EXPECT_EQ(parse_collision_mode("slide"), CollisionMode::Slide);
  EXPECT_EQ(parse_collision_mode("stop"), CollisionMode::Stop);
  EXPECT_EQ(parse_collision_mode("strict"), CollisionMode::Strict);
  EXPECT_THROW(parse_collision_mode("bounce"), Error);
  EXPECT_EQ(to_string(CollisionMode::Slide), "slide");
}

TEST(StepPose, RotateInPlace)
{
  const GridMap m(40, 40, 0.05);
  const auto r = step_pose(m, Pose(1.0, 1.0, 0.0), Action::rotate(1.0), {}, CollisionMode::Strict);
  EXPECT_DOUBLE_EQ(r.pose.x, 1.0);
  EXPECT_DOUBLE_EQ(r.pose.y, 1.0);
  EXPECT_DOUBLE_EQ(r.pose.theta, kPi / 4);
  EXPECT_FALSE(r.collided);
}

TEST(StepPose, ForwardInOpenSpace)
{
  const GridMap m(40, 40, 0.05);
  const auto r = step_pose(m, Pose(0.5, 0.5, 0.0), Action::forward(1.0), {}, CollisionMode::Stop);
  EXPECT_NEAR(r.pose.x, 0.85, 1e-12);
  EXPECT_DOUBLE_EQ(r.pose.y, 0.5);
  EXPECT_FALSE(r.collided);
}

TEST(StepPose, InvalidStart)
{
  GridMap m(10, 10, 0.05);
  m.set({2, 2}, Cell::Occupied);
  EXPECT_THROW(step_pose(m, Pose(0.12, 0.12, 0.0), Action::rotate(1.0), {}, CollisionMode::Slide),
    Error);
}

GridMap wall_ahead()
{
  // wall face at x = 1.0, 0.1 m ahead of the agent at x = 0.9
  GridMap m(40, 40, 0.05);
  for (int r = 0; r < 40; ++r) {
    m.set({20, r}, Cell::Occupied);
  }
  return m;
}

TEST(StepPose, StrictStaysPut)
{
  const GridMap m = wall_ahead();
  const Pose p(0.9, 1.0, 0.0);
  const auto r = step_pose(m, p, Action::forward(1.0), {}, CollisionMode::Strict);
  EXPECT_TRUE(r.collided);
  EXPECT_EQ(r.pose.x, p.x);
  EXPECT_EQ(r.pose.y, p.y);
  EXPECT_EQ(r.pose.theta, p.theta);
}

TEST(StepPose, StopAtContactMargin)
{
  const GridMap m = wall_ahead();
  const Pose p(0.9, 1.0, 0.0);
  const auto r = step_pose(m, p, Action::forward(1.0), {}, CollisionMode::Stop);
  EXPECT_TRUE(r.collided);
  const double contact = oracles::contact_by_bisection(p.position(), 0.35, 0.0,
      [&](WorldPoint a, WorldPoint b) {return segment_free(m, a, b);});
  EXPECT_NEAR(contact * 0.35, 0.1, 1e-9);
  EXPECT_NEAR(r.pose.x - p.x, 0.1 - 0.005, 1e-9);
  EXPECT_TRUE(is_free(m, r.pose.position()));
}

TEST(StepPose, StopMatchesBisectionOnClutter)
{
  const GridMap m = inflate(testutil::generated(21), kDefaultAgentRadius);
  const auto free = vantage::detail::free_cells(m);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ua(-kPi, kPi);
  int hits = 0;
  for (int i = 0; i < 3000; ++i) {
    const WorldPoint c = m.center(free[rng() % free.size()]);
    const Pose p(c.x, c.y, ua(rng));
    const auto r = step_pose(m, p, Action::forward(1.0), {}, CollisionMode::Stop);
    if (!r.collided) {
      continue;
    }
    ++hits;
    const double dx = 0.35 * std::cos(p.theta);
    const double dy = 0.35 * std::sin(p.theta);
    const double contact = 0.35 * oracles::contact_by_bisection(p.position(), dx, dy,
        [&](WorldPoint a, WorldPoint b) {return segment_free(m, a, b);});
    const double moved = distance(p.position(), r.pose.position());
    EXPECT_LE(moved, contact + 1e-9);
    EXPECT_GE(moved, contact - 2 * m.resolution() / 10 - 1e-9);
    EXPECT_TRUE(segment_free(m, p.position(), r.pose.position()));
  }
  EXPECT_GT(hits, 50);
}

TEST(StepPose, SlideAlongWall)
{
  const GridMap m = wall_ahead();
  // heading 30 degrees into the wall; y component is free
  const Pose p(0.9, 1.0, kPi / 6);
  const auto r = step_pose(m, p, Action::forward(1.0), {}, CollisionMode::Slide);
  EXPECT_TRUE(r.collided);
  EXPECT_DOUBLE_EQ(r.pose.x, 0.9);
  EXPECT_NEAR(r.pose.y, 1.0 + 0.35 * 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(r.pose.theta, p.theta);
}

TEST(StepPose, SlideFallsBackToContactHeadOn)
{
  const GridMap m = wall_ahead();
  const Pose p(0.9, 1.0, 0.0);
  const auto slide = step_pose(m, p, Action::forward(1.0), {}, CollisionMode::Slide);
  const auto stop = step_pose(m, p, Action::forward(1.0), {}, CollisionMode::Stop);
  EXPECT_TRUE(slide.collided);
  EXPECT_DOUBLE_EQ(slide.pose.x, stop.pose.x);
  EXPECT_DOUBLE_EQ(slide.pose.y, stop.pose.y);
}

TEST(StepPose, KinematicInvariants)
{
  const GridMap m = inflate(testutil::generated(22), kDefaultAgentRadius);
  const auto free = vantage::detail::free_cells(m);
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const MotionConfig cfg;
  for (int i = 0; i < 10000; ++i) {
    const GridIndex c = free[rng() % free.size()];
    const Pose p(c.col * 0.05 + 0.05 * u(rng), c.row * 0.05 + 0.05 * u(rng),
      2 * kPi * u(rng) - kPi);
    const Action a(u(rng), u(rng), 2 * u(rng) - 1);
    const auto mode = static_cast<CollisionMode>(rng() % 3);
    const auto r = step_pose(m, p, a, cfg, mode);
    EXPECT_LE(distance(p.position(), r.pose.position()), cfg.s_max + 1e-12);
    EXPECT_LE(std::abs(wrap_angle(r.pose.theta - p.theta)), cfg.phi_max + 1e-12);
    if (a.u1() > 0.5) {
      EXPECT_EQ(r.pose.x, p.x);
      EXPECT_EQ(r.pose.y, p.y);
    } else {
      EXPECT_EQ(r.pose.theta, p.theta);
    }
    EXPECT_TRUE(is_free(m, r.pose.position()));
    if (mode == CollisionMode::Strict) {
      EXPECT_TRUE(segment_free(m, p.position(), r.pose.position()));
    }
  }
}

}  // namespace
