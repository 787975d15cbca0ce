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

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "groundnav/dataset.hpp"
#include "groundnav/level1.hpp"
#include "groundnav/metrics.hpp"
#include "groundnav/mission.hpp"
#include "groundnav/pipeline.hpp"
#include "groundnav/remote.hpp"
#include "groundnav/sensing.hpp"
#include "groundnav/world.hpp"

namespace gn = groundnav;

namespace
{

const gn::world::Scene & classroom()
{
  static const gn::world::Scene scene =
    gn::world::load_scene_file(std::string(GROUNDNAV_DATA_DIR) + "/scenes/classroom.json");
  return scene;
}

void BM_RenderSnapshot(benchmark::State & state)
{
  const auto & scene = classroom();
  const auto & pose = scene.snapshot_points.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(gn::sensing::render_snapshot(scene, pose.position, pose.heading, 1));
  }
}
BENCHMARK(BM_RenderSnapshot)->Unit(benchmark::kMillisecond);

void BM_Perceive(benchmark::State & state)
{
  const auto & scene = classroom();
  const auto grid = gn::world::rasterize_occupancy(scene);
  gn::PerceptionOptions options;
  options.omega = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gn::perceive(scene, grid, scene.snapshot_points.front(), options));
  }
}
BENCHMARK(BM_Perceive)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ProjectPixel(benchmark::State & state)
{
  const gn::world::CameraModel camera;
  const gn::world::Pose pose{{1.0, 2.0}, 0.3};
  double x = 0.0;
  for (auto _ : state) {
    x = x >= camera.width_px - 1 ? 0.0 : x + 1.0;
    benchmark::DoNotOptimize(gn::level1::project_pixel({x, 70.0}, 3.0, camera, pose));
  }
}
BENCHMARK(BM_ProjectPixel);

void BM_RasterizeOccupancy(benchmark::State & state)
{
  const auto & scene = classroom();
  for (auto _ : state) {
    benchmark::DoNotOptimize(gn::world::rasterize_occupancy(scene));
  }
}
BENCHMARK(BM_RasterizeOccupancy)->Unit(benchmark::kMicrosecond);

void BM_PlanPath(benchmark::State & state)
{
  const int n = static_cast<int>(state.range(0));
  gn::world::OccupancyGrid grid(n, n, 0.05, {0.0, 0.0});
  std::mt19937_64 rng(5);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (rng() % 100 < 20) {
        grid.set_occupied({r, c});
      }
    }
  }
  const gn::world::Cell start{0, 0};
  const gn::world::Cell goal{n - 1, n - 1};
  grid.set_occupied(start, false);
  grid.set_occupied(goal, false);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(gn::mission::plan_path(grid, start, goal));
    } catch (const std::exception &) {
      state.SkipWithError("goal unreachable");
      break;
    }
  }
}
BENCHMARK(BM_PlanPath)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_ParseResponse(benchmark::State & state)
{
  const std::string text =
    "It could be chair2 in the third image or chair3 in the third image or chair7 in the fourth image or "
    "chair8 in the fourth image.";
  for (auto _ : state) {
    benchmark::DoNotOptimize(gn::grounding::parse_response(text));
  }
}
BENCHMARK(BM_ParseResponse);

void BM_EvaluateScripted(benchmark::State & state)
{
  const auto ds = gn::grounding::load_dataset(std::string(GROUNDNAV_DATA_DIR) + "/visdia.json");
  gn::metrics::EvaluationOptions options;
  options.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gn::metrics::evaluate_dataset(
        ds, [](const gn::grounding::DialogueItem &) {
          return std::make_unique<gn::grounding::ScriptedGrounder>();
        }, options));
  }
}
BENCHMARK(BM_EvaluateScripted)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
