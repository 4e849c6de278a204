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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vantage/env.hpp"
#include "vantage/error.hpp"
#include "vantage/grid.hpp"
#include "vantage/map_io.hpp"
#include "vantage/oracle.hpp"
#include "vantage/scene.hpp"

namespace vantage
{

using ojson = nlohmann::ordered_json;

/// One line of an episode file. The full inspection path is not stored; it is
/// recomputed on load and checked against `oracle_length` and `goal`.
///
/// Episode file (JSON Lines, LF-terminated):
///   line 1:  {"format":"vantage-episodes","version":1,"config":{...}}
///   line 2+: {"id":0,"map":"maps/map_000.txt","seed":123,
///             "start":{"x":..,"y":..,"theta":..},"target":{"x":..,"y":..},
///             "oracle_length":..,"goal":{"col":..,"row":..}}
/// `map` is relative to the directory holding the episode file.
struct EpisodeRecord
{
  std::size_t id{0};
  std::string map;
  std::uint64_t seed{0};
  Pose start;
  WorldPoint target;
  double oracle_length{0.0};
  GridIndex goal;
};

struct EpisodeFile
{
  ojson config = ojson::object();
  std::vector<EpisodeRecord> episodes;
};

inline EpisodeRecord to_record(const EpisodeSpec & ep)
{
  return {ep.id, ep.map, ep.seed, ep.start, ep.target, ep.oracle.inspection_path.length,
    ep.oracle.goal};
}

inline ojson to_json(const EpisodeRecord & r)
{
  ojson j;
  j["id"] = r.id;
  j["map"] = r.map;
  j["seed"] = r.seed;
  j["start"] = {{"x", r.start.x}, {"y", r.start.y}, {"theta", r.start.theta}};
  j["target"] = {{"x", r.target.x}, {"y", r.target.y}};
  j["oracle_length"] = r.oracle_length;
  j["goal"] = {{"col", r.goal.col}, {"row", r.goal.row}};
  return j;
}

inline EpisodeRecord record_from_json(const ojson & j)
{
  try {
    EpisodeRecord r;
    r.id = j.at("id").get<std::size_t>();
    r.map = j.at("map").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const auto & s = j.at("start");
    r.start = Pose(s.at("x").get<double>(), s.at("y").get<double>(), s.at("theta").get<double>());
    const auto & t = j.at("target");
    r.target = {t.at("x").get<double>(), t.at("y").get<double>()};
    r.oracle_length = j.at("oracle_length").get<double>();
    const auto & g = j.at("goal");
    r.goal = {g.at("col").get<int>(), g.at("row").get<int>()};
    return r;
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorCode::InvalidEpisode, std::string("bad episode record: ") + e.what());
  }
}

inline std::string serialize_episodes(const EpisodeFile & file)
{
  ojson header;
  header["format"] = "vantage-episodes";
  header["version"] = 1;
  header["config"] = file.config;
  std::string out = header.dump() + "\n";
  for (const auto & r : file.episodes) {
    out += to_json(r).dump() + "\n";
  }
  return out;
}

inline EpisodeFile parse_episodes(std::string_view text)
{
  EpisodeFile file;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      nl = text.size();
    }
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) {
      continue;
    }
    ojson j;
    try {
      j = ojson::parse(line);
    } catch (const nlohmann::json::exception & e) {
      throw Error(ErrorCode::InvalidEpisode, std::string("malformed episode line: ") + e.what());
    }
    if (!have_header) {
      if (!j.is_object() || j.value("format", "") != "vantage-episodes") {
        throw Error(ErrorCode::InvalidEpisode, "missing episode file header");
      }
      if (j.contains("config")) {
        file.config = j["config"];
      }
      have_header = true;
      continue;
    }
    file.episodes.push_back(record_from_json(j));
  }
  if (!have_header) {
    throw Error(ErrorCode::InvalidEpisode, "empty episode file");
  }
  return file;
}

/// Rebuilds the full episode, recomputing the oracle on `scene`. Throws
/// InvalidEpisode when the stored oracle summary does not match.
inline EpisodeSpec materialize(const Scene & scene, const EpisodeRecord & r, double sensor_range)
{
  EpisodeSpec ep;
  ep.id = r.id;
  ep.map = r.map;
  ep.seed = r.seed;
  ep.start = r.start;
  ep.target = r.target;
  try {
    ep.oracle = shortest_inspection_path(scene, r.start.position(), r.target, sensor_range);
  } catch (const Error & e) {
    throw Error(ErrorCode::InvalidEpisode,
      "episode " + std::to_string(r.id) + ": " + e.what());
  }
  if (ep.oracle.inspection_path.length != r.oracle_length || ep.oracle.goal != r.goal) {
    throw Error(ErrorCode::InvalidEpisode,
      "episode " + std::to_string(r.id) + ": stored oracle does not match the map");
  }
  return ep;
}

/// Episodes with the scenes they run on; scene_of[i] indexes `scenes`.
struct EpisodeSet
{
  std::vector<Scene> scenes;
  std::vector<std::string> scene_maps;
  std::vector<EpisodeSpec> episodes;
  std::vector<std::size_t> scene_of;
  ojson config = ojson::object();

  const Scene & scene_for(std::size_t i) const {return scenes[scene_of[i]];}
};

inline EpisodeSet load_episode_set(
  const std::filesystem::path & path, double agent_radius, double sensor_range)
{
  EpisodeFile file = parse_episodes(read_file(path));
  EpisodeSet set;
  set.config = file.config;
  const auto base = path.parent_path();
  for (const auto & r : file.episodes) {
    std::size_t si = 0;
    for (; si < set.scene_maps.size(); ++si) {
      if (set.scene_maps[si] == r.map) {
        break;
      }
    }
    if (si == set.scene_maps.size()) {
      set.scenes.push_back(make_scene(load_map_file(base / r.map), agent_radius));
      set.scene_maps.push_back(r.map);
    }
    set.episodes.push_back(materialize(set.scenes[si], r, sensor_range));
    set.scene_of.push_back(si);
  }
  return set;
}

}  // namespace vantage
