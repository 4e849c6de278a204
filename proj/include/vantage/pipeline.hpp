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

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "vantage/env.hpp"
#include "vantage/episode_io.hpp"
#include "vantage/error.hpp"
#include "vantage/eval.hpp"
#include "vantage/map_io.hpp"
#include "vantage/mapgen.hpp"
#include "vantage/oracle.hpp"
#include "vantage/random.hpp"
#include "vantage/render.hpp"
#include "vantage/scene.hpp"

namespace vantage
{

namespace fs = std::filesystem;

/// `path` expressed relative to `base`, with '/' separators.
inline std::string relative_to(const fs::path & path, const fs::path & base)
{
  const fs::path a = fs::absolute(path).lexically_normal();
  const fs::path b = fs::absolute(base.empty() ? fs::path(".") : base).lexically_normal();
  fs::path rel = a.lexically_relative(b);
  if (rel.empty()) {
    rel = a;
  }
  return rel.generic_string();
}

/// Runs fn(i) for i in [0, n) on `jobs` threads; the first exception wins.
template<typename Fn>
void parallel_for(std::size_t n, int jobs, Fn && fn)
{
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto worker = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) {
          return;
        }
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(m);
          if (!failure) {
            failure = std::current_exception();
          }
          next.store(n);
          return;
        }
      }
    };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back(worker);
    }
    for (auto & t : pool) {
      t.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

// ---------------------------------------------------------------------------
// mapgen

struct MapgenOptions
{
  MapGenSpec spec;
  int count{1};
  std::uint64_t seed{0};
  fs::path out_dir{"."};
};

struct MapgenResult
{
  std::vector<fs::path> files;
  fs::path manifest;
};

/// Writes map_000.txt ... and manifest.json into `out_dir`. Map i uses seed
/// derive_seed(seed, i).
inline MapgenResult run_mapgen(const MapgenOptions & opt, const ojson & config)
{
  validate(opt.spec);
  if (opt.count < 1) {
    throw Error(ErrorCode::InvalidArgument, "map count must be >= 1");
  }
  MapgenResult result;
  ojson manifest;
  manifest["format"] = "vantage-map-manifest";
  manifest["version"] = 1;
  manifest["config"] = config;
  manifest["maps"] = ojson::array();
  for (int i = 0; i < opt.count; ++i) {
    MapGenSpec spec = opt.spec;
    spec.seed = derive_seed(opt.seed, static_cast<std::uint64_t>(i));
    const GridMap map = generate_map(spec);
    char name[32];
    std::snprintf(name, sizeof(name), "map_%03d.txt", i);
    const fs::path file = opt.out_dir / name;
    write_file(file, save_map(map));
    result.files.push_back(file);
    manifest["maps"].push_back({{"file", std::string(name)}, {"seed", spec.seed}});
  }
  result.manifest = opt.out_dir / "manifest.json";
  write_file(result.manifest, manifest.dump(2) + "\n");
  return result;
}

/// Map files listed in a manifest, resolved against the manifest directory.
inline std::vector<fs::path> manifest_maps(const fs::path & manifest)
{
  ojson j;
  try {
    j = ojson::parse(read_file(manifest));
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorCode::IoError, std::string("bad manifest: ") + e.what());
  }
  std::vector<fs::path> out;
  for (const auto & m : j.at("maps")) {
    out.push_back(manifest.parent_path() / m.at("file").get<std::string>());
  }
  return out;
}

// ---------------------------------------------------------------------------
// episodes

struct EpisodesOptions
{
  std::vector<fs::path> maps;
  int count{400};
  std::uint64_t seed{0};
  SamplerConfig sampler;
  double agent_radius{kDefaultAgentRadius};
  double sensor_range{5.0};
  fs::path out{"episodes.jsonl"};
  int jobs{1};
};

struct EpisodesResult
{
  std::vector<EpisodeSpec> episodes;
  std::vector<std::string> failures;  // one message per exhausted slot
};

/// Samples `count` episodes, slot i on map i % maps.size() with seed
/// derive_seed(seed, i). Exhausted slots are reported and skipped.
inline EpisodesResult run_episodes(const EpisodesOptions & opt, const ojson & config)
{
  if (opt.maps.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no map files given");
  }
  if (opt.count < 0) {
    throw Error(ErrorCode::InvalidArgument, "episode count must be >= 0");
  }
  std::vector<Scene> scenes;
  std::vector<std::vector<GridIndex>> free;
  std::vector<std::string> names;
  for (const auto & m : opt.maps) {
    scenes.push_back(make_scene(load_map_file(m), opt.agent_radius));
    free.push_back(detail::free_cells(scenes.back().traversable));
    names.push_back(relative_to(m, opt.out.parent_path()));
  }

  const auto n = static_cast<std::size_t>(opt.count);
  std::vector<std::optional<EpisodeSpec>> slots(n);
  std::vector<std::string> errors(n);
  parallel_for(n, opt.jobs, [&](std::size_t i) {
      const std::size_t si = i % scenes.size();
      try {
        EpisodeSpec ep = sample_episode(scenes[si], opt.sampler, opt.sensor_range,
          derive_seed(opt.seed, i), &free[si]);
        ep.id = i;
        ep.map = names[si];
        slots[i] = std::move(ep);
      } catch (const Error & e) {
        if (e.code() != ErrorCode::SamplingExhausted) {
          throw;
        }
        errors[i] = "episode " + std::to_string(i) + " on " + names[si] + ": " + e.what();
      }
    });

  EpisodesResult result;
  EpisodeFile file;
  file.config = config;
  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i]) {
      file.episodes.push_back(to_record(*slots[i]));
      result.episodes.push_back(std::move(*slots[i]));
    } else {
      result.failures.push_back(errors[i]);
    }
  }
  write_file(opt.out, serialize_episodes(file));
  return result;
}

// ---------------------------------------------------------------------------
// oracle statistics

struct OracleEpisodeStats
{
  std::size_t episode{0};
  double inspection_length{0.0};
  double navigation_length{0.0};     // full start -> target path
  double navigation_until_visible{0.0};
  bool visible_on_navigation_path{false};
  bool inspection_dominates{false};  // exact comparison of octile costs
};

struct OracleStats
{
  std::vector<OracleEpisodeStats> episodes;
  double mean_inspection{0.0};
  double mean_navigation_until_visible{0.0};
  double mean_difference{0.0};
  std::size_t dominance_violations{0};
};

inline OracleStats oracle_statistics(const EpisodeSet & set, double sensor_range, int jobs = 1)
{
  if (set.episodes.empty()) {
    throw Error(ErrorCode::EmptyRecordSet, "episode set is empty");
  }
  OracleStats stats;
  stats.episodes.resize(set.episodes.size());
  parallel_for(set.episodes.size(), jobs, [&](std::size_t i) {
      const Scene & scene = set.scene_for(i);
      const EpisodeSpec & ep = set.episodes[i];
      const Path nav = shortest_navigation_path(scene.traversable, ep.start.position(), ep.target);
      const VisibilityPrefix prefix =
        navigation_visibility_prefix(scene.sensing, nav, ep.target, sensor_range);
      OracleEpisodeStats s;
      s.episode = ep.id;
      s.inspection_length = ep.oracle.inspection_path.length;
      s.navigation_length = nav.length;
      s.navigation_until_visible = prefix.length;
      s.visible_on_navigation_path = prefix.visible;
      s.inspection_dominates = !(prefix.cost < ep.oracle.inspection_path.cost);
      stats.episodes[i] = s;
    });
  double li = 0.0;
  double ln = 0.0;
  for (const auto & s : stats.episodes) {
    li += s.inspection_length;
    ln += s.navigation_until_visible;
    if (!s.inspection_dominates) {
      ++stats.dominance_violations;
    }
  }
  const auto n = static_cast<double>(stats.episodes.size());
  stats.mean_inspection = li / n;
  stats.mean_navigation_until_visible = ln / n;
  stats.mean_difference = stats.mean_navigation_until_visible - stats.mean_inspection;
  return stats;
}

inline ojson oracle_stats_to_json(const OracleStats & stats, const ojson & config)
{
  ojson doc;
  doc["format"] = "vantage-oracle";
  doc["version"] = 1;
  doc["config"] = config;
  doc["episodes"] = stats.episodes.size();
  doc["mean_inspection_length"] = stats.mean_inspection;
  doc["mean_navigation_until_visible_length"] = stats.mean_navigation_until_visible;
  doc["mean_difference"] = stats.mean_difference;
  doc["dominance_violations"] = stats.dominance_violations;
  ojson rows = ojson::array();
  for (const auto & s : stats.episodes) {
    rows.push_back({
        {"episode", s.episode},
        {"inspection_length", s.inspection_length},
        {"navigation_length", s.navigation_length},
        {"navigation_until_visible_length", s.navigation_until_visible},
        {"visible_on_navigation_path", s.visible_on_navigation_path},
      });
  }
  doc["per_episode"] = std::move(rows);
  return doc;
}

// ---------------------------------------------------------------------------
// evaluation

struct EvalOptions
{
  fs::path episodes;
  std::vector<std::string> policies{"inspector"};
  std::vector<CollisionMode> modes{CollisionMode::Strict};
  std::uint64_t seed{0};
  int jobs{1};
  EnvConfig env;
  double agent_radius{kDefaultAgentRadius};
  fs::path out_dir{"."};
  fs::path trace_dir;  // when set, one trajectory log per rollout
};

struct EvalResult
{
  std::vector<Report> reports;
  fs::path report_file;
  fs::path records_file;
};

inline EvalResult run_eval(const EvalOptions & opt, const ojson & config)
{
  const EpisodeSet set = load_episode_set(opt.episodes, opt.agent_radius, opt.env.sensor.max_range);
  if (set.episodes.empty()) {
    throw Error(ErrorCode::EmptyRecordSet, "episode file holds no episodes");
  }
  EvalResult result;
  result.reports = evaluate(set, opt.policies, opt.modes, opt.env, opt.seed, opt.jobs);
  result.report_file = opt.out_dir / "report.json";
  result.records_file = opt.out_dir / "records.csv";
  write_file(result.report_file, report_to_json(result.reports, config).dump(2) + "\n");
  write_file(result.records_file, records_csv(result.reports));

  if (!opt.trace_dir.empty()) {
    for (const auto & p : opt.policies) {
      for (CollisionMode m : opt.modes) {
        for (std::size_t i = 0; i < set.episodes.size(); ++i) {
          const EpisodeSpec & ep = set.episodes[i];
          auto policy = make_policy(p, set.scene_for(i), opt.env);
          std::vector<Pose> traj;
          run_episode(set.scene_for(i), ep, *policy, m, opt.env,
            policy_seed(opt.seed, p, ep.seed), &traj);
          write_file(opt.trace_dir / (p + "_" + std::string(to_string(m)) + "_" +
            std::to_string(ep.id) + ".csv"), format_trajectory(traj));
        }
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// render

struct RenderRequest
{
  fs::path map;        // used when no episode file is given
  fs::path episodes;
  std::size_t index{0};
  fs::path trajectory;
  fs::path out{"render.ppm"};
  double agent_radius{kDefaultAgentRadius};
  double sensor_range{5.0};
  RenderOptions options;
};

inline Image run_render(const RenderRequest & req)
{
  Image img;
  std::optional<std::vector<Pose>> traj;
  if (!req.trajectory.empty()) {
    traj = parse_trajectory(read_file(req.trajectory));
  }
  if (!req.episodes.empty()) {
    const EpisodeFile file = parse_episodes(read_file(req.episodes));
    if (req.index >= file.episodes.size()) {
      throw Error(ErrorCode::InvalidArgument, "episode index out of range");
    }
    const EpisodeRecord & r = file.episodes[req.index];
    const Scene scene = make_scene(load_map_file(req.episodes.parent_path() / r.map),
        req.agent_radius);
    const EpisodeSpec ep = materialize(scene, r, req.sensor_range);
    img = render_episode(scene, &ep, req.sensor_range, traj ? &*traj : nullptr, req.options);
  } else {
    const Scene scene = make_scene(load_map_file(req.map), req.agent_radius);
    img = render_episode(scene, nullptr, req.sensor_range, nullptr, req.options);
  }
  write_file(req.out, encode_ppm(img));
  return img;
}

}  // namespace vantage
