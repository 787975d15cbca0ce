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

// Builds the dialogue dataset from hand-written templates. Templates name the
// target by scene object; object ids and per-turn candidate sets come from
// running the perception pipeline and the constraint oracle.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "groundnav/dataset.hpp"
#include "groundnav/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace groundnav;

namespace
{

std::string read_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Loaded
{
  world::Scene scene;
  Perception perception;
};

grounding::Dataset build(const std::string & templates_path)
{
  const json doc = json::parse(read_file(templates_path));
  const fs::path base = fs::path(templates_path).parent_path();

  // Reuse the dataset parser for everything but ids and candidate sets.
  json items = json::array();
  for (const auto & t : doc.at("items")) {
    json item = t;
    item.erase("target");
    item["target_id"] = "pending";
    if (item.at("type") == "B") {
      item["step_candidates"] = json::array();
      for (std::size_t i = 0; i < t.at("turns").size(); ++i) {
        item["step_candidates"].push_back(json::array({"pending"}));
      }
    }
    items.push_back(item);
  }
  grounding::Dataset ds = grounding::parse_dataset(json{{"items", items}}.dump(), base.string());

  std::map<std::pair<std::string, int>, std::unique_ptr<Loaded>> cache;
  const auto & templates = doc.at("items");
  for (std::size_t n = 0; n < ds.items.size(); ++n) {
    auto & item = ds.items[n];
    const std::string target = templates[n].at("target").get<std::string>();
    auto & slot = cache[{item.scene_ref, item.snapshot_point_index}];
    if (!slot) {
      slot = std::make_unique<Loaded>();
      slot->scene = world::load_scene_file((base / item.scene_ref).string());
      slot->perception = perceive(
        slot->scene, world::rasterize_occupancy(slot->scene),
        slot->scene.snapshot_points.at(static_cast<std::size_t>(item.snapshot_point_index)));
    }
    const grounding::GroundingContext ctx{&slot->scene, &slot->perception, {}};
    item.target_id.clear();
    for (const auto & e : slot->perception.entries) {
      if (e.object_name == target) {
        item.target_id = e.id;
      }
    }
    if (item.target_id.empty()) {
      throw DataError("item '" + item.id + "': target '" + target + "' is not visible");
    }
    const auto steps = grounding::oracle_steps(item.turns, ctx);
    if (item.type == grounding::DialogueType::B) {
      for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        if (steps[i].size() < 2) {
          throw DataError(
                  "item '" + item.id + "': turn " + std::to_string(i + 1) +
                  " already leaves fewer than two candidates");
        }
      }
      item.step_candidates = steps;
    } else {
      item.step_candidates.clear();
    }
    grounding::validate_item(item);
    if (const std::string why = grounding::check_against_oracle(item, ctx); !why.empty()) {
      throw DataError("item '" + item.id + "': " + why);
    }
  }
  return ds;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Generate the dialogue dataset from templates", "make_visdia"};
  std::string templates;
  std::string output;
  bool check = false;
  app.add_option("templates", templates, "Template file")->required()->check(CLI::ExistingFile);
  app.add_option("output", output, "Dataset file to write")->required();
  app.add_flag("--check", check, "Fail when the output file differs instead of writing it");
  CLI11_PARSE(app, argc, argv);

  try {
    const std::string text = grounding::serialize_dataset(build(templates));
    if (check) {
      if (!fs::exists(output) || read_file(output) != text) {
        std::cerr << output << " is out of date; rerun make_visdia\n";
        return 1;
      }
      std::cout << output << " is up to date\n";
      return 0;
    }
    std::ofstream(output) << text;
    std::cout << "wrote " << output << "\n";
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
