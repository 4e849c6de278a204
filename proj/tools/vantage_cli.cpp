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


// vantage: map generation, episode sampling, oracle statistics, policy
// evaluation and rendering for the perceptive inspection benchmark.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <cstdint>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vantage/vantage.hpp"

namespace
{

using vantage::ojson;
namespace fs = std::filesystem;

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

struct Globals
{
  std::uint64_t seed{0};
  int jobs{1};
  fs::path out_dir{"."};
};

ojson sensor_json(const vantage::SensorConfig & s)
{
  return {{"fov", s.fov}, {"n_rays", s.n_rays}, {"max_range", s.max_range}};
}

ojson motion_json(const vantage::MotionConfig & m)
{
  return {{"s_max", m.s_max}, {"phi_max", m.phi_max}};
}

ojson reward_json(const vantage::RewardConfig & r)
{
  return {
    {"success_reward", r.success_reward},
    {"failure_reward", r.failure_reward},
    {"orient_positive_scale", r.orient_positive_scale},
    {"nav_scale", r.nav_scale},
    {"move_penalty", r.move_penalty},
    {"move_window", r.move_window},
    {"move_threshold_fraction", r.move_threshold_fraction},
    {"step_penalty", r.step_penalty},
    {"max_steps", r.max_steps},
  };
}

ojson sampler_json(const vantage::SamplerConfig & s)
{
  return {
    {"min_distance", s.min_distance},
    {"max_distance", s.max_distance},
    {"min_ratio", s.min_ratio},
    {"max_ratio", s.max_ratio},
    {"max_attempts", s.max_attempts},
  };
}

const auto kUnitInterval = CLI::Validator(
  [](std::string & v) -> std::string {
    double d = 0.0;
    try {
      d = std::stod(v);
    } catch (...) {
      return "not a number: " + v;
    }
    return (d >= 0.0 && d < 1.0) ? std::string() : "value must lie in [0, 1): " + v;
  },
  "in [0, 1)");

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Perceptive inspection simulator, oracle and evaluation harness", "vantage"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Key-value config file (flags override it)");

  Globals g;
  app.add_option("--seed", g.seed, "Base random seed")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber)
  ->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "Output directory")->capture_default_str();

  // mapgen
  vantage::MapgenOptions mg;
  auto * mapgen = app.add_subcommand("mapgen", "Generate procedural indoor maps");
  mapgen->add_option("--count", mg.count, "Number of maps")->check(CLI::PositiveNumber)
  ->capture_default_str();
  mapgen->add_option("--width", mg.spec.width, "Width in cells")->check(CLI::Range(20, 100000))
  ->capture_default_str();
  mapgen->add_option("--height", mg.spec.height, "Height in cells")->check(CLI::Range(20, 100000))
  ->capture_default_str();
  mapgen->add_option("--resolution", mg.spec.resolution, "Meters per cell")
  ->check(CLI::PositiveNumber)->capture_default_str();
  mapgen->add_option("--rooms", mg.spec.rooms, "Room count")->check(CLI::PositiveNumber)
  ->capture_default_str();
  mapgen->add_option("--density", mg.spec.obstacle_density, "Obstacle density in [0, 1)")
  ->check(kUnitInterval)->capture_default_str();
  mapgen->add_option("--corridor-width", mg.spec.corridor_width, "Door width in cells")
  ->check(CLI::PositiveNumber)->capture_default_str();

  // episodes
  vantage::EpisodesOptions eo;
  std::vector<fs::path> episode_maps;
  fs::path manifest;
  fs::path episodes_out;
  auto * episodes = app.add_subcommand("episodes", "Sample episodes with precomputed oracles");
  episodes->add_option("--maps", episode_maps, "Map files")->check(CLI::ExistingFile);
  episodes->add_option("--manifest", manifest, "Map manifest written by mapgen")
  ->check(CLI::ExistingFile);
  episodes->add_option("--count", eo.count, "Number of episodes")->check(CLI::NonNegativeNumber)
  ->capture_default_str();
  episodes->add_option("--min-distance", eo.sampler.min_distance)->capture_default_str();
  episodes->add_option("--max-distance", eo.sampler.max_distance)->capture_default_str();
  episodes->add_option("--min-ratio", eo.sampler.min_ratio)->capture_default_str();
  episodes->add_option("--max-ratio", eo.sampler.max_ratio)->capture_default_str();
  episodes->add_option("--max-attempts", eo.sampler.max_attempts)->check(CLI::PositiveNumber)
  ->capture_default_str();
  episodes->add_option("--agent-radius", eo.agent_radius)->check(CLI::NonNegativeNumber)
  ->capture_default_str();
  episodes->add_option("--sensor-range", eo.sensor_range)->check(CLI::PositiveNumber)
  ->capture_default_str();
  episodes->add_option("--out", episodes_out, "Episode file (default <out-dir>/episodes.jsonl)");

  // oracle
  fs::path oracle_episodes;
  double oracle_radius = vantage::kDefaultAgentRadius;
  double oracle_range = 5.0;
  auto * oracle = app.add_subcommand("oracle", "Inspection vs navigation path statistics");
  oracle->add_option("--episodes", oracle_episodes, "Episode file")->required()
  ->check(CLI::ExistingFile);
  oracle->add_option("--agent-radius", oracle_radius)->check(CLI::NonNegativeNumber)
  ->capture_default_str();
  oracle->add_option("--sensor-range", oracle_range)->check(CLI::PositiveNumber)
  ->capture_default_str();

  // eval
  vantage::EvalOptions ev;
  std::vector<std::string> policy_ids{"inspector"};
  std::vector<std::string> mode_ids{"strict"};
  auto * eval = app.add_subcommand("eval", "Evaluate policies (SR / SPL)");
  eval->add_option("--episodes", ev.episodes, "Episode file")->required()
  ->check(CLI::ExistingFile);
  eval->add_option("--policy", policy_ids, "Policy ids")
  ->check(CLI::IsMember({"random", "avoider", "navigator", "inspector"}))->capture_default_str();
  eval->add_option("--mode", mode_ids, "Collision modes")
  ->check(CLI::IsMember({"slide", "stop", "strict"}))->capture_default_str();
  eval->add_option("--agent-radius", ev.agent_radius)->check(CLI::NonNegativeNumber)
  ->capture_default_str();
  eval->add_option("--fov", ev.env.sensor.fov)->capture_default_str();
  eval->add_option("--rays", ev.env.sensor.n_rays)->check(CLI::PositiveNumber)
  ->capture_default_str();
  eval->add_option("--sensor-range", ev.env.sensor.max_range)->check(CLI::PositiveNumber)
  ->capture_default_str();
  eval->add_option("--s-max", ev.env.motion.s_max)->check(CLI::PositiveNumber)
  ->capture_default_str();
  eval->add_option("--phi-max", ev.env.motion.phi_max)->check(CLI::PositiveNumber)
  ->capture_default_str();
  eval->add_option("--reward-success", ev.env.reward.success_reward)->capture_default_str();
  eval->add_option("--reward-failure", ev.env.reward.failure_reward)->capture_default_str();
  eval->add_option("--orient-scale", ev.env.reward.orient_positive_scale)->capture_default_str();
  eval->add_option("--nav-scale", ev.env.reward.nav_scale)->capture_default_str();
  eval->add_option("--move-penalty", ev.env.reward.move_penalty)->capture_default_str();
  eval->add_option("--move-window", ev.env.reward.move_window)->check(CLI::PositiveNumber)
  ->capture_default_str();
  eval->add_option("--move-threshold", ev.env.reward.move_threshold_fraction,
    "Stagnation threshold as a fraction of s_max")->capture_default_str();
  eval->add_option("--step-penalty", ev.env.reward.step_penalty)->capture_default_str();
  eval->add_option("--max-steps", ev.env.reward.max_steps)->check(CLI::PositiveNumber)
  ->capture_default_str();
  eval->add_option("--trace-dir", ev.trace_dir, "Write one trajectory log per rollout");

  // render
  vantage::RenderRequest rr;
  auto * render = app.add_subcommand("render", "Render a map or an episode to a PPM image");
  render->add_option("--map", rr.map, "Map file")->check(CLI::ExistingFile);
  render->add_option("--episodes", rr.episodes, "Episode file")->check(CLI::ExistingFile);
  render->add_option("--index", rr.index, "Episode index in the file")->capture_default_str();
  render->add_option("--trajectory", rr.trajectory, "Trajectory log (x,y,theta per line)")
  ->check(CLI::ExistingFile);
  render->add_option("--out", rr.out, "Output image (default <out-dir>/render.ppm)");
  render->add_option("--scale", rr.options.scale, "Pixels per cell")->check(CLI::PositiveNumber)
  ->capture_default_str();
  render->add_option("--agent-radius", rr.agent_radius)->check(CLI::NonNegativeNumber)
  ->capture_default_str();
  render->add_option("--sensor-range", rr.sensor_range)->check(CLI::PositiveNumber)
  ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (mapgen->parsed()) {
      mg.seed = g.seed;
      mg.out_dir = g.out_dir;
      ojson cfg{{"command", "mapgen"}, {"seed", g.seed}, {"count", mg.count},
        {"width", mg.spec.width}, {"height", mg.spec.height},
        {"resolution", mg.spec.resolution}, {"rooms", mg.spec.rooms},
        {"obstacle_density", mg.spec.obstacle_density},
        {"corridor_width", mg.spec.corridor_width}};
      const auto res = vantage::run_mapgen(mg, cfg);
      std::cout << "wrote " << res.files.size() << " maps and " << res.manifest.string() << "\n";
    } else if (episodes->parsed()) {
      if (!manifest.empty()) {
        for (const auto & m : vantage::manifest_maps(manifest)) {
          episode_maps.push_back(m);
        }
      }
      if (episode_maps.empty()) {
        std::cerr << "episodes: give --maps or --manifest\n";
        return kUsageError;
      }
      eo.maps = episode_maps;
      eo.seed = g.seed;
      eo.jobs = g.jobs;
      eo.out = episodes_out.empty() ? g.out_dir / "episodes.jsonl" : episodes_out;
      ojson maps = ojson::array();
      for (const auto & m : eo.maps) {
        maps.push_back(vantage::relative_to(m, eo.out.parent_path()));
      }
      ojson cfg{{"command", "episodes"}, {"seed", g.seed}, {"count", eo.count}, {"maps", maps},
        {"sampler", sampler_json(eo.sampler)}, {"agent_radius", eo.agent_radius},
        {"sensor_range", eo.sensor_range}};
      const auto res = vantage::run_episodes(eo, cfg);
      for (const auto & f : res.failures) {
        std::cerr << "warning: " << f << "\n";
      }
      std::cout << "wrote " << res.episodes.size() << " episodes to " << eo.out.string() << "\n";
    } else if (oracle->parsed()) {
      const auto set = vantage::load_episode_set(oracle_episodes, oracle_radius, oracle_range);
      const auto stats = vantage::oracle_statistics(set, oracle_range, g.jobs);
      ojson cfg{{"command", "oracle"},
        {"episodes", vantage::relative_to(oracle_episodes, g.out_dir)},
        {"agent_radius", oracle_radius}, {"sensor_range", oracle_range}};
      vantage::write_file(g.out_dir / "oracle.json",
        vantage::oracle_stats_to_json(stats, cfg).dump(2) + "\n");
      std::cout << "episodes: " << stats.episodes.size() << "\n"
                << "mean inspection length: " << stats.mean_inspection << " m\n"
                << "mean navigation-until-visible length: "
                << stats.mean_navigation_until_visible << " m\n"
                << "difference: " << stats.mean_difference << " m\n"
                << "dominance violations: " << stats.dominance_violations << "\n";
    } else if (eval->parsed()) {
      ev.policies = policy_ids;
      ev.modes.clear();
      for (const auto & m : mode_ids) {
        ev.modes.push_back(vantage::parse_collision_mode(m));
      }
      vantage::validate(ev.env.sensor);
      ev.seed = g.seed;
      ev.jobs = g.jobs;
      ev.out_dir = g.out_dir;
      ojson cfg{{"command", "eval"}, {"seed", g.seed},
        {"episodes", vantage::relative_to(ev.episodes, g.out_dir)},
        {"policies", policy_ids}, {"modes", mode_ids}, {"agent_radius", ev.agent_radius},
        {"sensor", sensor_json(ev.env.sensor)}, {"motion", motion_json(ev.env.motion)},
        {"reward", reward_json(ev.env.reward)}};
      const auto res = vantage::run_eval(ev, cfg);
      for (const auto & rep : res.reports) {
        std::cout << rep.policy << " " << vantage::to_string(rep.mode) << ": N=" << rep.episodes
                  << " SR=" << rep.sr << " SPL=" << rep.spl << "\n";
      }
      std::cout << "wrote " << res.report_file.string() << " and " << res.records_file.string()
                << "\n";
    } else if (render->parsed()) {
      if (rr.map.empty() && rr.episodes.empty()) {
        std::cerr << "render: give --map or --episodes\n";
        return kUsageError;
      }
      if (rr.out.empty() || !render->count("--out")) {
        rr.out = g.out_dir / "render.ppm";
      }
      vantage::run_render(rr);
      std::cout << "wrote " << rr.out.string() << "\n";
    }
  } catch (const vantage::Error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == vantage::ErrorCode::UnknownPolicy ||
           e.code() == vantage::ErrorCode::UnknownMode ? kUsageError : kRuntimeError;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}
