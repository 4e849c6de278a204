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
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "vantage/dynamics.hpp"
#include "vantage/env.hpp"
#include "vantage/episode_io.hpp"
#include "vantage/error.hpp"
#include "vantage/map_io.hpp"
#include "vantage/policies.hpp"
#include "vantage/random.hpp"

namespace vantage
{

/// Outcome of one (episode, policy, collision mode) rollout.
struct EvalRecord
{
  std::size_t episode{0};
  std::string policy;
  CollisionMode mode{CollisionMode::Strict};
  bool success{false};
  double path_length{0.0};    // p_i, translation only
  double oracle_length{0.0};  // l_i
  int steps{0};
  Termination reason{Termination::Running};
  int collisions{0};
};

/// s_i * l_i / max(p_i, l_i); a success with l_i = 0 counts as 1.
inline double spl_term(const EvalRecord & r)
{
  if (!r.success) {
    return 0.0;
  }
  if (r.oracle_length <= 0.0) {
    return 1.0;
  }
  return r.oracle_length / std::max(r.path_length, r.oracle_length);
}

/// Unclamped s_i * l_i / p_i, logged for comparison with the plain formula.
inline double raw_spl_term(const EvalRecord & r)
{
  if (!r.success) {
    return 0.0;
  }
  if (r.path_length <= 0.0) {
    return r.oracle_length <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return r.oracle_length / r.path_length;
}

inline double success_rate(std::span<const EvalRecord> records)
{
  if (records.empty()) {
    throw Error(ErrorCode::EmptyRecordSet, "success rate of an empty record set");
  }
  double sum = 0.0;
  for (const auto & r : records) {
    sum += r.success ? 1.0 : 0.0;
  }
  return sum / static_cast<double>(records.size());
}

inline double spl(std::span<const EvalRecord> records)
{
  if (records.empty()) {
    throw Error(ErrorCode::EmptyRecordSet, "SPL of an empty record set");
  }
  double sum = 0.0;
  for (const auto & r : records) {
    sum += spl_term(r);
  }
  return sum / static_cast<double>(records.size());
}

/// Rolls `policy` through one episode until it terminates.
inline EvalRecord run_episode(
  const Scene & scene, const EpisodeSpec & ep, Policy & policy, CollisionMode mode,
  const EnvConfig & cfg, std::uint64_t policy_seed, std::vector<Pose> * trajectory = nullptr)
{
  Rng rng(policy_seed);
  policy.reset(ep);
  Environment env(scene, ep, cfg, mode);
  Observation obs = env.reset();
  if (trajectory) {
    trajectory->assign(1, env.state().pose);
  }
  while (!env.state().terminated) {
    const Pose pose = env.state().pose;
    const Action a = policy.act(obs, policy.privileged() ? &pose : nullptr, rng);
    StepOutcome out = env.step(a);
    obs = std::move(out.observation);
    if (trajectory) {
      trajectory->push_back(env.state().pose);
    }
  }
  EvalRecord r;
  r.episode = ep.id;
  r.policy = std::string(policy.id());
  r.mode = mode;
  r.success = env.state().reason == Termination::Success;
  r.path_length = env.state().path_length;
  r.oracle_length = ep.oracle.inspection_path.length;
  r.steps = env.state().k;
  r.reason = env.state().reason;
  r.collisions = env.state().collisions;
  return r;
}

/// Seed of the policy RNG for one rollout. Independent of the collision mode,
/// so every mode replays the same random stream.
inline std::uint64_t policy_seed(std::uint64_t run_seed, std::string_view policy, std::uint64_t ep_seed)
{
  return derive_seed(derive_seed(run_seed, fnv1a(policy)), ep_seed);
}

struct Report
{
  std::string policy;
  CollisionMode mode{CollisionMode::Strict};
  std::size_t episodes{0};
  double sr{0.0};
  double spl{0.0};
  double mean_path_length_success{0.0};  // over successes only; 0 when none
  double mean_oracle_length{0.0};
  std::vector<EvalRecord> records;  // sorted by episode id
};

/// Aggregates one (policy, mode) group.
inline Report make_report(std::string policy, CollisionMode mode, std::vector<EvalRecord> records)
{
  std::sort(records.begin(), records.end(), [](const EvalRecord & a, const EvalRecord & b) {
      return a.episode < b.episode;
    });
  Report rep;
  rep.policy = std::move(policy);
  rep.mode = mode;
  rep.episodes = records.size();
  rep.sr = success_rate(records);
  rep.spl = spl(records);
  double p_sum = 0.0;
  double l_sum = 0.0;
  std::size_t successes = 0;
  for (const auto & r : records) {
    l_sum += r.oracle_length;
    if (r.success) {
      p_sum += r.path_length;
      ++successes;
    }
  }
  rep.mean_path_length_success = successes ? p_sum / static_cast<double>(successes) : 0.0;
  rep.mean_oracle_length = l_sum / static_cast<double>(records.size());
  rep.records = std::move(records);
  return rep;
}

/// Runs every (episode, policy, mode) triple on `jobs` threads. The result is
/// one Report per (policy, mode) in the order given, independent of `jobs`.
inline std::vector<Report> evaluate(
  const EpisodeSet & set, const std::vector<std::string> & policies,
  const std::vector<CollisionMode> & modes, const EnvConfig & cfg, std::uint64_t run_seed,
  int jobs)
{
  if (set.episodes.empty()) {
    throw Error(ErrorCode::EmptyRecordSet, "no episodes to evaluate");
  }
  for (const auto & p : policies) {
    if (std::find(kPolicyIds.begin(), kPolicyIds.end(), p) == kPolicyIds.end()) {
      throw Error(ErrorCode::UnknownPolicy,
        "unknown policy '" + p + "' (valid: random, avoider, navigator, inspector)");
    }
  }
  const std::size_t n_ep = set.episodes.size();
  const std::size_t total = policies.size() * modes.size() * n_ep;
  std::vector<EvalRecord> results(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= total) {
          return;
        }
        const std::size_t e = i % n_ep;
        const std::size_t m = (i / n_ep) % modes.size();
        const std::size_t p = i / (n_ep * modes.size());
        try {
          const Scene & scene = set.scene_for(e);
          const EpisodeSpec & ep = set.episodes[e];
          auto policy = make_policy(policies[p], scene, cfg);
          results[i] = run_episode(scene, ep, *policy, modes[m], cfg,
              policy_seed(run_seed, policies[p], ep.seed));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
          next.store(total);
          return;
        }
      }
    };
  const int threads = std::max(1, jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto & t : pool) {
      t.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  std::vector<Report> reports;
  for (std::size_t p = 0; p < policies.size(); ++p) {
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const auto first = results.begin() + static_cast<long>((p * modes.size() + m) * n_ep);
      reports.push_back(make_report(policies[p], modes[m],
        std::vector<EvalRecord>(first, first + static_cast<long>(n_ep))));
    }
  }
  return reports;
}

inline ojson report_to_json(const std::vector<Report> & reports, const ojson & config)
{
  ojson doc;
  doc["format"] = "vantage-report";
  doc["version"] = 1;
  doc["config"] = config;
  doc["reports"] = ojson::array();
  for (const auto & rep : reports) {
    ojson j;
    j["policy"] = rep.policy;
    j["mode"] = std::string(to_string(rep.mode));
    j["episodes"] = rep.episodes;
    j["sr"] = rep.sr;
    j["spl"] = rep.spl;
    j["mean_path_length_success"] = rep.mean_path_length_success;
    j["mean_oracle_length"] = rep.mean_oracle_length;
    ojson recs = ojson::array();
    for (const auto & r : rep.records) {
      recs.push_back({
          {"episode", r.episode},
          {"success", r.success},
          {"reason", std::string(to_string(r.reason))},
          {"steps", r.steps},
          {"path_length", r.path_length},
          {"oracle_length", r.oracle_length},
          {"spl_term", spl_term(r)},
          {"collisions", r.collisions},
        });
    }
    j["records"] = std::move(recs);
    doc["reports"].push_back(std::move(j));
  }
  return doc;
}

/// Flat table, one row per record.
inline constexpr std::string_view kRecordsHeader =
  "episode,policy,mode,success,reason,steps,path_length,oracle_length,spl_term,raw_ratio,"
  "collisions";

inline std::string records_csv(const std::vector<Report> & reports)
{
  std::string out(kRecordsHeader);
  out += "\n";
  for (const auto & rep : reports) {
    for (const auto & r : rep.records) {
      out += std::to_string(r.episode) + "," + r.policy + "," + std::string(to_string(r.mode)) +
        "," + (r.success ? "1" : "0") + "," + std::string(to_string(r.reason)) + "," +
        std::to_string(r.steps) + "," + format_double(r.path_length) + "," +
        format_double(r.oracle_length) + "," + format_double(spl_term(r)) + "," +
        format_double(raw_spl_term(r)) + "," + std::to_string(r.collisions) + "\n";
    }
  }
  return out;
}

}  // namespace vantage
