// Copyright 2026 The GroundNav Authors
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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"

#include "groundnav/errors.hpp"
#include "groundnav/remote.hpp"
#include "groundnav_cli/cli.hpp"
#include "test_support.hpp"

namespace groundnav::cli
{
namespace
{

namespace fs = std::filesystem;
using groundnav::testing::data_path;

struct Result
{
  int code = -1;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string> & args, const std::string & input = "")
{
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir
{
public:
  TempDir()
  {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
      ("groundnav_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {fs::remove_all(path_);}
  std::string str(const std::string & leaf = "") const {return (path_ / leaf).string();}

private:
  fs::path path_;
};

std::string slurp(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write(const std::string & path, const std::string & text)
{
  std::ofstream(path) << text;
}

TEST(ExitCodes, MappingByErrorKind)
{
  EXPECT_EQ(exit_code_for(ConfigError("x")), kConfigError);
  EXPECT_EQ(exit_code_for(DataError("x")), kDataError);
  EXPECT_EQ(exit_code_for(GeometryError("x")), kDataError);
  EXPECT_EQ(exit_code_for(TransportError("x")), kTransportError);
  EXPECT_EQ(exit_code_for(GroundingError("x")), kGroundingFailure);
  EXPECT_EQ(exit_code_for(UnreachableError("x")), kGroundingFailure);
  EXPECT_EQ(exit_code_for(std::runtime_error("x")), kDataError);
}

TEST(Usage, MissingOrUnknownSubcommandIsConfigError)
{
  EXPECT_EQ(call({}).code, kConfigError);
  EXPECT_EQ(call({"fly"}).code, kConfigError);
  EXPECT_EQ(call({"plan", data_path("scenes/office.json")}).code, kConfigError);  // --goal required
  const Result help = call({"--help"});
  EXPECT_EQ(help.code, kOk);
  EXPECT_NE(help.out.find("simulate"), std::string::npos);
  EXPECT_NE(help.out.find("evaluate"), std::string::npos);
}

TEST(Config, ParseKeysAndRejectUnknown)
{
  const Config c = parse_config(R"({"omega": 4, "k_max": 3, "weights": "0.5,0.5,0.5,0.5",
    "camera": {"width_px": 80}, "seed": 9, "workers": 2})");
  EXPECT_EQ(c.omega, 4);
  EXPECT_EQ(c.k_max, 3);
  EXPECT_DOUBLE_EQ(c.weights.sr, 0.5);
  EXPECT_DOUBLE_EQ(c.camera.at("width_px"), 80.0);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.workers, 2);
  EXPECT_THROW(parse_config(R"({"omgea": 4})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"omega": "eight"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"omega": 0})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"weights": "0.9,0.9,0.5,0.5"})"), ConfigError);
  EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
  EXPECT_THROW(parse_config("{"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, CameraOverrides)
{
  world::Scene s = world::load_scene_file(data_path("scenes/office.json"));
  apply_camera_overrides(s, {{"fov_x_deg", 60.0}, {"width_px", 64.0}, {"mount_height", 0.5}});
  EXPECT_NEAR(s.camera.fov_x, deg_to_rad(60.0), 1e-12);
  EXPECT_EQ(s.camera.width_px, 64);
  EXPECT_DOUBLE_EQ(s.camera.mount_height, 0.5);
  EXPECT_THROW(apply_camera_overrides(s, {{"zoom", 2.0}}), ConfigError);
}

TEST(Config, FileFeedsCommandAndBadFileFails)
{
  TempDir dir;
  write(dir.str("bad.json"), R"({"colour": "red"})");
  EXPECT_EQ(call({"--config", dir.str("bad.json"), "plan", data_path("scenes/office.json"), "--goal", "1,1"}).code,
    kConfigError);
  EXPECT_EQ(call({"--config", dir.str("missing.json"), "plan", data_path("scenes/office.json"), "--goal", "1,1"})
    .code, kConfigError);
}

TEST(Simulate, WritesArtifactsDeterministically)
{
  TempDir a;
  TempDir b;
  const Result ra = call({"--out", a.str(), "simulate", data_path("scenes/office.json")});
  const Result rb = call({"--out", b.str(), "simulate", data_path("scenes/office.json")});
  ASSERT_EQ(ra.code, kOk) << ra.err;
  ASSERT_EQ(rb.code, kOk) << rb.err;
  EXPECT_EQ(ra.out.substr(0, ra.out.rfind("artifacts")), rb.out.substr(0, rb.out.rfind("artifacts")));
  for (const char * leaf : {"snapshots.json", "online_map.json", "errors.txt", "errors.json", "snapshot_1.ppm",
      "snapshot_8.ppm"})
  {
    ASSERT_TRUE(fs::exists(a.str(leaf))) << leaf;
    EXPECT_EQ(slurp(a.str(leaf)), slurp(b.str(leaf))) << leaf;
  }
  EXPECT_NE(ra.out.find("Mean Error (m)"), std::string::npos);
  EXPECT_EQ(slurp(a.str("snapshot_1.ppm")).rfind("P6\n", 0), 0u);

  TempDir c;
  ASSERT_EQ(call({"--out", c.str(), "simulate", data_path("scenes/office.json"), "--no-images", "--omega", "4"}).code,
    kOk);
  EXPECT_FALSE(fs::exists(c.str("snapshot_1.ppm")));
}

TEST(Simulate, ErrorsMapToExitCodes)
{
  TempDir dir;
  EXPECT_EQ(call({"--out", dir.str(), "simulate", "/nonexistent/scene.json"}).code, kDataError);
  write(dir.str("broken.json"), "{\"bounds\": ");
  EXPECT_EQ(call({"--out", dir.str(), "simulate", dir.str("broken.json")}).code, kDataError);
  EXPECT_EQ(call({"--out", dir.str(), "simulate", data_path("scenes/office.json"), "--pose-index", "7"}).code,
    kConfigError);
  EXPECT_EQ(call({"--out", dir.str(), "simulate", data_path("scenes/office.json"), "--omega", "0"}).code,
    kConfigError);
}

TEST(Evaluate, ScriptedReportAndDeterminism)
{
  TempDir a;
  TempDir b;
  const Result ra = call({"--out", a.str(), "evaluate", data_path("visdia.json")});
  const Result rb = call({"--out", b.str(), "evaluate", data_path("visdia.json"), "--workers", "3"});
  ASSERT_EQ(ra.code, kOk) << ra.err;
  ASSERT_EQ(rb.code, kOk) << rb.err;
  const std::string csv = slurp(a.str("report.csv"));
  EXPECT_EQ(csv.rfind("space,case,SR_or_AR,AS_or_NS,T\n", 0), 0u);
  EXPECT_NE(csv.find("overall,T_B,1.000,1.000,1.000"), std::string::npos);
  EXPECT_EQ(csv, slurp(b.str("report.csv")));
  EXPECT_EQ(slurp(a.str("report.json")), slurp(b.str("report.json")));
}

TEST(Evaluate, PerturbedSeedIsReproducible)
{
  TempDir a;
  TempDir b;
  ASSERT_EQ(call({"--seed", "7", "--out", a.str(), "evaluate", data_path("visdia.json"), "--grounder", "perturbed"})
    .code, kOk);
  ASSERT_EQ(call({"--seed", "7", "--out", b.str(), "evaluate", data_path("visdia.json"), "--grounder", "perturbed",
      "--workers", "4"}).code, kOk);
  EXPECT_EQ(slurp(a.str("report.json")), slurp(b.str("report.json")));
  EXPECT_EQ(slurp(a.str("report.csv")).find("overall,T_B,1.000,1.000"), std::string::npos);
}

TEST(Evaluate, FlagValidation)
{
  TempDir dir;
  const auto ev = [&](std::vector<std::string> extra) {
      std::vector<std::string> args{"--out", dir.str(), "evaluate", data_path("visdia.json")};
      args.insert(args.end(), extra.begin(), extra.end());
      return call(args).code;
    };
  EXPECT_EQ(ev({"--weights", "0.9,0.2,0.6,0.4"}), kConfigError);
  EXPECT_EQ(ev({"--workers", "0"}), kConfigError);
  EXPECT_EQ(ev({"--k-max", "0"}), kConfigError);
  EXPECT_EQ(ev({"--grounder", "oracle"}), kConfigError);
  EXPECT_EQ(ev({"--grounder", "canned"}), kConfigError);  // no transcript
  EXPECT_EQ(ev({"--item", "no-such-item"}), kConfigError);
  EXPECT_EQ(call({"--out", dir.str(), "evaluate", "/nonexistent/visdia.json"}).code, kDataError);
}

TEST(Evaluate, CannedTranscriptSingleItem)
{
  TempDir dir;
  const Result r = call({"--out", dir.str(), "evaluate", data_path("visdia.json"), "--grounder", "canned",
      "--transcript", data_path("transcripts/classroom_chair7.json"), "--item", "cl1-01"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(slurp(dir.str("report.csv")).find(",1.000,1.000,1.000\n"), std::string::npos);

  const Result all = call({"--out", dir.str(), "evaluate", data_path("visdia.json"), "--grounder", "canned",
      "--transcript", data_path("transcripts/classroom_chair7.json")});
  EXPECT_EQ(all.code, kTransportError);
}

TEST(Evaluate, RemoteSendsCredentialFromEnvironment)
{
  std::string seen_auth;
  std::mutex m;
  httplib::Server server;
  server.Post("/v1/ground", [&](const httplib::Request & req, httplib::Response & res) {
      {
        const std::lock_guard lock(m);
        seen_auth = req.get_header_value("Authorization");
      }
      res.set_content(grounding::encode_reply("I cannot find it."), "application/json");
    });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread worker([&] {server.listen_after_bind();});
  server.wait_until_ready();

  ::setenv(grounding::kApiKeyEnv, "test-credential", 1);
  TempDir dir;
  const Result r = call({"--out", dir.str(), "evaluate", data_path("visdia.json"), "--grounder", "remote",
      "--endpoint", "http://127.0.0.1:" + std::to_string(port), "--item", "mr1-01"});
  ::unsetenv(grounding::kApiKeyEnv);
  server.stop();
  worker.join();
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(seen_auth, "Bearer test-credential");
}

TEST(Evaluate, FailingRemoteIsTransportFailure)
{
  httplib::Server server;
  server.Post("/v1/ground", [](const httplib::Request &, httplib::Response & res) {
      res.status = 503;
      res.set_content(grounding::encode_error("overloaded"), "application/json");
    });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread worker([&] {server.listen_after_bind();});
  server.wait_until_ready();
  TempDir dir;
  const Result r = call({"--out", dir.str(), "evaluate", data_path("visdia.json"), "--grounder", "remote",
      "--endpoint", "http://127.0.0.1:" + std::to_string(port), "--item", "mr1-01"});
  server.stop();
  worker.join();
  EXPECT_EQ(r.code, kTransportError);
  EXPECT_NE(r.out.find("aborted: 1"), std::string::npos) << r.out;
}

TEST(Ground, ResolvesPlansAndReadsStdin)
{
  const std::vector<std::string> turns{"type_is chair; action go", "attribute subtype=low", "nearest_to door_1"};
  std::vector<std::string> args{"ground", data_path("scenes/classroom.json")};
  for (const auto & t : turns) {
    args.push_back("--turn");
    args.push_back(t);
  }
  const Result flags = call(args);
  ASSERT_EQ(flags.code, kOk) << flags.err;
  EXPECT_NE(flags.out.find("R1: ambiguous"), std::string::npos);
  EXPECT_NE(flags.out.find("resolved"), std::string::npos);
  EXPECT_NE(flags.out.find("mission: mission-1 action=go"), std::string::npos);
  EXPECT_NE(flags.out.find("path ("), std::string::npos);

  const Result piped = call({"ground", data_path("scenes/classroom.json")},
      turns[0] + "\n" + turns[1] + "\n" + turns[2] + "\n");
  EXPECT_EQ(piped.code, kOk) << piped.err;
  EXPECT_EQ(piped.out, flags.out);

  const Result map = call({"ground", data_path("scenes/classroom.json"), "--show-map", "--turn",
      "type_is whiteboard; action go"});
  EXPECT_EQ(map.code, kOk) << map.err;
  EXPECT_NE(map.out.find('o'), std::string::npos);
}

TEST(Ground, UnresolvedAndBadInput)
{
  EXPECT_EQ(call({"ground", data_path("scenes/classroom.json"), "--turn", "type_is chair; action go"}).code,
    kGroundingFailure);
  EXPECT_EQ(call({"ground", data_path("scenes/classroom.json"), "--turn", "type_is whiteboard"}).code,
    kGroundingFailure);  // no action
  EXPECT_EQ(call({"ground", data_path("scenes/classroom.json"), "--turn", "hover chair"}).code, kDataError);
  EXPECT_EQ(call({"ground", data_path("scenes/classroom.json"), "--turn", "nearest_to piano; action go"}).code,
    kDataError);
}

TEST(Plan, PathOverlayAndErrors)
{
  const std::string scene = data_path("scenes/office.json");
  const world::Scene s = world::load_scene_file(scene);
  const auto grid = world::rasterize_occupancy(s);
  // First free run of 11 cells along a row.
  std::optional<world::Cell> from;
  for (int r = 0; r < grid.height() && !from; ++r) {
    for (int c = 0; c + 10 < grid.width() && !from; ++c) {
      bool clear = true;
      for (int i = 0; i <= 10; ++i) {
        clear = clear && grid.free({r, c + i});
      }
      if (clear) {
        from = world::Cell{r, c};
      }
    }
  }
  ASSERT_TRUE(from.has_value());
  const auto cell = [](int r, int c) {return std::to_string(r) + "," + std::to_string(c);};
  const Result ok = call({"plan", scene, "--start", cell(from->row, from->col), "--goal",
      cell(from->row, from->col + 10)});
  ASSERT_EQ(ok.code, kOk) << ok.err;
  EXPECT_NE(ok.out.find("path (11 cells, cost 10.000)"), std::string::npos) << ok.out;
  EXPECT_NE(ok.out.find('S'), std::string::npos);
  EXPECT_NE(ok.out.find('G'), std::string::npos);
  EXPECT_EQ(call({"plan", scene, "--goal", "-1,0"}).code, kConfigError);
  EXPECT_EQ(call({"plan", scene, "--goal", "ten,two"}).code, kConfigError);
  EXPECT_EQ(call({"plan", scene, "--goal", "10,10", "--inflation", "-1"}).code, kConfigError);

  // Goal inside an object footprint.
  const world::Cell blocked = grid.cell_of(s.objects.front().ground_center());
  EXPECT_EQ(call({"plan", scene, "--goal", std::to_string(blocked.row) + "," + std::to_string(blocked.col)}).code,
    kGroundingFailure);
}

}  // namespace
}  // namespace groundnav::cli
