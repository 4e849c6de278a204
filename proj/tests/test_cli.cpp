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


#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "vantage/vantage.hpp"

namespace
{

namespace fs = std::filesystem;
using vantage::ojson;
using vantage::read_file;

struct CliRun
{
  int code;
  std::string output;
};

CliRun cli(const std::string & args)
{
  const std::string cmd = std::string(VANTAGE_CLI) + " " + args + " 2>&1";
  FILE * pipe = popen(cmd.c_str(), "r");
  CliRun r{-1, {}};
  if (!pipe) {
    return r;
  }
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) {
    r.output += buf.data();
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test
{
protected:
  void SetUp() override
  {
    dir_ = fs::temp_directory_path() /
      ("vantage_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override {fs::remove_all(dir_);}

  std::string d(const std::string & sub = "") const {return (dir_ / sub).string();}

  fs::path dir_;
};

TEST_F(Cli, HelpAndUsageErrors)
{
  EXPECT_EQ(cli("--help").code, 0);
  EXPECT_EQ(cli("").code, 1);
  EXPECT_EQ(cli("teleport").code, 1);
  EXPECT_EQ(cli("mapgen --density 1.5").code, 1);
  EXPECT_EQ(cli("--jobs 0 mapgen").code, 1);
  const CliRun bad = cli("eval --episodes " + std::string(VANTAGE_CLI) + " --policy ppo");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.output.find("inspector"), std::string::npos);
  EXPECT_EQ(cli("eval --episodes " + std::string(VANTAGE_CLI) + " --mode bounce").code, 1);
  EXPECT_EQ(cli("episodes --count 3").code, 1);  // no maps given
}

TEST_F(Cli, MapgenIsDeterministic)
{
  ASSERT_EQ(cli("--seed 7 --out-dir " + d("a") + " mapgen --count 3").code, 0);
  ASSERT_EQ(cli("--seed 7 --out-dir " + d("b") + " mapgen --count 3").code, 0);
  const ojson manifest = ojson::parse(read_file(dir_ / "a" / "manifest.json"));
  ASSERT_EQ(manifest["maps"].size(), 3u);
  EXPECT_EQ(manifest["config"]["seed"], 7);
  std::size_t listed = 0;
  for (const auto & m : manifest["maps"]) {
    const std::string file = m["file"];
    EXPECT_EQ(read_file(dir_ / "a" / file), read_file(dir_ / "b" / file));
    ++listed;
  }
  std::size_t on_disk = 0;
  for (const auto & e : fs::directory_iterator(dir_ / "a")) {
    on_disk += e.path().extension() == ".txt";
  }
  EXPECT_EQ(on_disk, listed);
}

TEST_F(Cli, ConfigFilePrecedence)
{
  vantage::write_file(dir_ / "run.ini", "seed=7\n[mapgen]\ncount=2\nrooms=4\n");
  ASSERT_EQ(cli("--config " + d("run.ini") + " --out-dir " + d("file") + " mapgen").code, 0);
  ojson m = ojson::parse(read_file(dir_ / "file" / "manifest.json"));
  EXPECT_EQ(m["maps"].size(), 2u);
  EXPECT_EQ(m["config"]["seed"], 7);
  EXPECT_EQ(m["config"]["rooms"], 4);
  // flags beat the file
  ASSERT_EQ(cli("--config " + d("run.ini") + " --seed 9 --out-dir " + d("flag") +
    " mapgen --count 1").code, 0);
  m = ojson::parse(read_file(dir_ / "flag" / "manifest.json"));
  EXPECT_EQ(m["maps"].size(), 1u);
  EXPECT_EQ(m["config"]["seed"], 9);
  EXPECT_EQ(m["config"]["rooms"], 4);
}

TEST_F(Cli, FullPipeline)
{
  ASSERT_EQ(cli("--seed 1 --out-dir " + d("maps") + " mapgen --count 2").code, 0);
  const std::string eps = d("eps/episodes.jsonl");
  ASSERT_EQ(cli("--seed 2 --out-dir " + d("eps") + " episodes --manifest " +
    d("maps/manifest.json") + " --count 8").code, 0);
  const std::string first = read_file(eps);
  ASSERT_EQ(cli("--seed 2 --out-dir " + d("eps") + " episodes --manifest " +
    d("maps/manifest.json") + " --count 8").code, 0);
  EXPECT_EQ(read_file(eps), first);

  const CliRun oracle = cli("--out-dir " + d("oracle") + " oracle --episodes " + eps);
  ASSERT_EQ(oracle.code, 0) << oracle.output;
  EXPECT_NE(oracle.output.find("dominance violations: 0"), std::string::npos);
  const ojson stats = ojson::parse(read_file(dir_ / "oracle" / "oracle.json"));
  EXPECT_EQ(stats["config"]["sensor_range"], 5.0);

  const CliRun eval = cli("--out-dir " + d("eval") + " eval --episodes " + eps +
      " --policy inspector random --mode strict slide --max-steps 50");
  ASSERT_EQ(eval.code, 0) << eval.output;
  const ojson report = ojson::parse(read_file(dir_ / "eval" / "report.json"));
  EXPECT_EQ(report["config"]["reward"]["max_steps"], 50);
  EXPECT_EQ(report["config"]["motion"]["s_max"], 0.35);
  EXPECT_EQ(report["reports"].size(), 4u);
  EXPECT_EQ(report["reports"][0]["sr"], 1.0);
  EXPECT_TRUE(fs::exists(dir_ / "eval" / "records.csv"));

  ASSERT_EQ(cli("--out-dir " + d("img") + " render --episodes " + eps + " --index 1").code, 0);
  const std::string ppm = read_file(dir_ / "img" / "render.ppm");
  EXPECT_EQ(ppm.rfind("P6\n", 0), 0u);
  ASSERT_EQ(cli("render --map " + d("maps/map_000.txt") + " --out " + d("map.ppm")).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "map.ppm"));
}

TEST_F(Cli, RuntimeErrors)
{
  vantage::write_file(dir_ / "broken.jsonl", "not json\n");
  EXPECT_EQ(cli("oracle --episodes " + d("broken.jsonl")).code, 2);
  vantage::write_file(dir_ / "empty.jsonl", "{\"format\":\"vantage-episodes\",\"version\":1}\n");
  const CliRun r = cli("--out-dir " + d("o") + " oracle --episodes " + d("empty.jsonl"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("empty"), std::string::npos);
}

}  // namespace
