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

#include "groundnav_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "groundnav/dataset.hpp"
#include "groundnav/errors.hpp"
#include "groundnav/grounding.hpp"
#include "groundnav/mission.hpp"
#include "groundnav/remote.hpp"

namespace groundnav::cli
{

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

void Config::validate() const
{
  weights.validate();
  if (omega < 1) {
    throw ConfigError("omega must be at least 1");
  }
  if (grounder != "scripted" && grounder != "perturbed" && grounder != "canned" && grounder != "remote") {
    throw ConfigError("unknown grounder '" + grounder + "' (scripted, perturbed, canned, remote)");
  }
  if (grounder == "canned" && transcript.empty()) {
    throw ConfigError("the canned grounder needs a transcript");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw ConfigError("noise sigma must be a non-negative number");
  }
  if (k_max < 1) {
    throw ConfigError("k-max must be at least 1");
  }
  if (workers < 1) {
    throw ConfigError("workers must be at least 1");
  }
  if (!(inflation >= 0.0) || !std::isfinite(inflation)) {
    throw ConfigError("inflation radius must be a non-negative number");
  }
  for (const auto & [key, value] : camera) {
    if (key != "fov_x_deg" && key != "fov_y_deg" && key != "width_px" && key != "height_px" &&
      key != "mount_height")
    {
      throw ConfigError("unknown camera override '" + key + "'");
    }
    if (!std::isfinite(value)) {
      throw ConfigError("camera override '" + key + "' must be finite");
    }
  }
}

Config parse_config(const std::string & text, Config base)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error & e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  try {
    for (const auto & [key, value] : doc.items()) {
      if (key == "weights") {
        if (value.is_string()) {
          base.weights = metrics::Weights::parse(value.get<std::string>());
        } else {
          base.weights = {value.at("sr").get<double>(), value.at("as").get<double>(),
            value.at("ar").get<double>(), value.at("ns").get<double>()};
        }
      } else if (key == "camera") {
        for (const auto & [ck, cv] : value.items()) {
          base.camera[ck] = cv.get<double>();
        }
      } else if (key == "omega") {
        base.omega = value.get<int>();
      } else if (key == "grounder") {
        base.grounder = value.get<std::string>();
      } else if (key == "endpoint") {
        base.endpoint = value.get<std::string>();
      } else if (key == "transcript") {
        base.transcript = value.get<std::string>();
      } else if (key == "noise_sigma") {
        base.noise_sigma = value.get<double>();
      } else if (key == "out") {
        base.out = value.get<std::string>();
      } else if (key == "seed") {
        base.seed = value.get<std::uint64_t>();
      } else if (key == "k_max") {
        base.k_max = value.get<int>();
      } else if (key == "workers") {
        base.workers = value.get<int>();
      } else if (key == "inflation") {
        base.inflation = value.get<double>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception & e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  base.validate();
  return base;
}

Config load_config(const std::string & path, Config base)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), std::move(base));
}

void apply_camera_overrides(world::Scene & scene, const std::map<std::string, double> & overrides)
{
  for (const auto & [key, value] : overrides) {
    if (key == "fov_x_deg") {
      scene.camera.fov_x = deg_to_rad(value);
    } else if (key == "fov_y_deg") {
      scene.camera.fov_y = deg_to_rad(value);
    } else if (key == "width_px") {
      scene.camera.width_px = static_cast<int>(value);
    } else if (key == "height_px") {
      scene.camera.height_px = static_cast<int>(value);
    } else if (key == "mount_height") {
      scene.camera.mount_height = value;
    } else {
      throw ConfigError("unknown camera override '" + key + "'");
    }
  }
  try {
    world::validate(scene);
  } catch (const DataError & e) {
    throw ConfigError(std::string("camera override: ") + e.what());
  }
}

int exit_code_for(const std::exception & e)
{
  if (const auto * err = dynamic_cast<const Error *>(&e)) {
    switch (err->kind()) {
      case ErrorKind::Config: return kConfigError;
      case ErrorKind::Data: return kDataError;
      case ErrorKind::Geometry: return kDataError;
      case ErrorKind::Transport: return kTransportError;
      case ErrorKind::Grounding: return kGroundingFailure;
    }
  }
  return kDataError;
}

namespace
{

struct Flags
{
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> weights;
  std::optional<int> omega;
  std::optional<std::string> grounder;
  std::optional<std::string> transcript;
  std::optional<std::string> endpoint;
  std::optional<double> noise_sigma;
  std::optional<int> k_max;
  std::optional<int> workers;
  std::optional<double> inflation;
};

Config resolve(const Flags & f)
{
  Config c = f.config.empty() ? Config{} : load_config(f.config);
  if (f.seed) {c.seed = *f.seed;}
  if (f.out) {c.out = *f.out;}
  if (f.weights) {c.weights = metrics::Weights::parse(*f.weights);}
  if (f.omega) {c.omega = *f.omega;}
  if (f.grounder) {c.grounder = *f.grounder;}
  if (f.transcript) {c.transcript = *f.transcript;}
  if (f.endpoint) {c.endpoint = *f.endpoint;}
  if (f.noise_sigma) {c.noise_sigma = *f.noise_sigma;}
  if (f.k_max) {c.k_max = *f.k_max;}
  if (f.workers) {c.workers = *f.workers;}
  if (f.inflation) {c.inflation = *f.inflation;}
  c.validate();
  return c;
}

void write_file(const fs::path & path, const std::string & bytes)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write '" + path.string() + "'");
  }
  out << bytes;
}

fs::path output_dir(const Config & c)
{
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) {
    throw ConfigError("cannot create output directory '" + c.out + "': " + ec.message());
  }
  return c.out;
}

world::Scene load_scene_with(const std::string & path, const Config & c)
{
  world::Scene scene = world::load_scene_file(path);
  apply_camera_overrides(scene, c.camera);
  return scene;
}

const world::Pose & pose_at(const world::Scene & scene, int index)
{
  if (index < 0 || static_cast<std::size_t>(index) >= scene.snapshot_points.size()) {
    throw ConfigError(
            "pose index " + std::to_string(index) + " out of range (scene has " +
            std::to_string(scene.snapshot_points.size()) + " snapshot points)");
  }
  return scene.snapshot_points[static_cast<std::size_t>(index)];
}

PerceptionOptions perception_options(const Config & c)
{
  PerceptionOptions o;
  o.omega = c.omega;
  o.depth_noise_sigma = c.noise_sigma;
  o.seed = c.seed;
  return o;
}

std::string fixed(double v, int digits = 3)
{
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

std::string show(world::Cell c)
{
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

world::Cell parse_cell(const std::string & text)
{
  int r = 0;
  int c = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> r >> comma >> c) || comma != ',' || !(in >> std::ws).eof()) {
    throw ConfigError("cell must be written as row,col: '" + text + "'");
  }
  return {r, c};
}

std::uint64_t fnv1a(const std::string & s)
{
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h = (h ^ ch) * 1099511628211ULL;
  }
  return h;
}

std::vector<world::Cell> footprint_cells(const level1::OnlineMap & online)
{
  std::vector<world::Cell> out;
  for (const auto & [id, cells] : online.footprints) {
    out.insert(out.end(), cells.begin(), cells.end());
  }
  return out;
}

/// Base occupancy plus every mapped object footprint.
world::OccupancyGrid planning_grid(const level1::OnlineMap & online)
{
  world::OccupancyGrid grid = online.base;
  for (const auto & c : footprint_cells(online)) {
    grid.set_occupied(c);
  }
  return grid;
}

std::string describe(const grounding::GrounderResponse & r)
{
  std::string out = grounding::to_string(r.status);
  if (!r.candidates.empty()) {
    out += ":";
    for (const auto & c : r.candidates) {
      out += " " + c.object_id + "@" + std::to_string(c.snapshot_index);
    }
  }
  return out;
}

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const Config & c, const std::string & scene_path, int pose_index, bool images, std::ostream & out)
{
  const world::Scene scene = load_scene_with(scene_path, c);
  const world::Pose & pose = pose_at(scene, pose_index);
  const Perception p = perceive(scene, world::rasterize_occupancy(scene), pose, perception_options(c));
  const fs::path dir = output_dir(c);

  ordered_json snaps = ordered_json::array();
  for (const auto & s : p.snapshots) {
    ordered_json dets = ordered_json::array();
    for (const auto & d : p.detections) {
      if (d.snapshot_index != s.index) {
        continue;
      }
      dets.push_back({{"object", d.object_name}, {"type", d.object_type},
          {"bbox", {d.bbox.x_min, d.bbox.y_min, d.bbox.x_max, d.bbox.y_max}},
          {"mask_pixels", d.mask.size()}});
    }
    snaps.push_back({{"index", s.index}, {"heading_deg", rad_to_deg(s.heading)},
        {"width", s.width}, {"height", s.height}, {"detections", dets}});
  }
  ordered_json entries = ordered_json::array();
  for (const auto & e : p.entries) {
    ordered_json seen = ordered_json::array();
    for (const auto & d : e.detections) {
      seen.push_back(d.snapshot_index);
    }
    entries.push_back({{"id", e.id}, {"object", e.object_name}, {"type", e.object_type}, {"snapshots", seen}});
  }
  ordered_json bundle;
  bundle["scene"] = scene_path;
  bundle["pose"] = {{"position", {pose.position.x, pose.position.y}}, {"heading_deg", rad_to_deg(pose.heading)}};
  bundle["omega"] = c.omega;
  bundle["snapshots"] = snaps;
  bundle["objects"] = entries;
  write_file(dir / "snapshots.json", bundle.dump(2) + "\n");

  ordered_json map;
  map["resolution"] = p.online.base.resolution();
  map["width"] = p.online.base.width();
  map["height"] = p.online.base.height();
  map["origin"] = {p.online.base.origin().x, p.online.base.origin().y};
  map["objects"] = ordered_json::array();
  for (const auto & e : p.entries) {
    ordered_json cells = ordered_json::array();
    if (const auto it = p.online.footprints.find(e.id); it != p.online.footprints.end()) {
      for (const auto & cell : it->second) {
        cells.push_back({cell.row, cell.col});
      }
    }
    ordered_json obj = {{"id", e.id}, {"object", e.object_name}, {"footprint", cells}};
    if (const auto it = p.online.positions.find(e.id); it != p.online.positions.end()) {
      obj["position"] = {it->second.x, it->second.y};
    }
    map["objects"].push_back(std::move(obj));
  }
  write_file(dir / "online_map.json", map.dump(2) + "\n");

  out << "snapshots: " << p.snapshots.size() << "\n";
  out << "objects: " << p.entries.size() << "\n";
  for (const auto & e : p.entries) {
    out << "  " << std::left << std::setw(18) << e.id << std::setw(18) << e.object_name;
    if (const auto it = p.online.positions.find(e.id); it != p.online.positions.end()) {
      out << "(" << fixed(it->second.x) << ", " << fixed(it->second.y) << ")";
    }
    out << std::right << "  cells=" << (p.online.footprints.count(e.id) ? p.online.footprints.at(e.id).size() : 0)
        << "\n";
  }
  if (!p.online.positions.empty()) {
    const level1::ErrorReport report = level1::analyze_errors(p.online, scene);
    const std::string table = level1::format_error_table(report);
    write_file(dir / "errors.txt", table);
    write_file(dir / "errors.json", level1::error_report_json(report));
    out << table;
  }
  if (images) {
    for (std::size_t i = 0; i < p.snapshots.size(); ++i) {
      write_file(
        dir / ("snapshot_" + std::to_string(p.snapshots[i].index) + ".ppm"),
        sensing::render_ppm(p.snapshots[i], p.annotated[i]));
    }
  }
  out << "artifacts written to " << dir.string() << "\n";
  return kOk;
}

// --- evaluate ---------------------------------------------------------------

int cmd_evaluate(
  Config c, const std::string & dataset_path, const std::vector<std::string> & only, std::ostream & out,
  std::ostream & err)
{
  grounding::Dataset dataset = grounding::load_dataset(dataset_path);
  if (!only.empty()) {
    for (const auto & id : only) {
      const bool known = std::any_of(
        dataset.items.begin(), dataset.items.end(), [&](const auto & item) {return item.id == id;});
      if (!known) {
        throw ConfigError("no dataset item '" + id + "'");
      }
    }
    std::erase_if(dataset.items, [&](const auto & item) {
        return std::find(only.begin(), only.end(), item.id) == only.end();
      });
  }
  metrics::EvaluationOptions opts;
  opts.weights = c.weights;
  opts.k_max = c.k_max;
  opts.workers = c.workers;
  opts.perception = perception_options(c);

  std::unique_ptr<grounding::CannedTransport> canned;
  std::optional<std::string> api_key;
  if (const char * key = std::getenv(grounding::kApiKeyEnv); key != nullptr && *key != '\0') {
    api_key = key;
  }
  metrics::GrounderFactory factory;
  if (c.grounder == "scripted") {
    factory = [](const grounding::DialogueItem &) {
        return std::make_unique<grounding::ScriptedGrounder>();
      };
  } else if (c.grounder == "perturbed") {
    const std::uint64_t seed = c.seed;
    factory = [seed](const grounding::DialogueItem & item) {
        return std::make_unique<grounding::PerturbedGrounder>(seed ^ fnv1a(item.id));
      };
  } else if (c.grounder == "canned") {
    // One transcript drives every conversation in dataset order.
    canned = std::make_unique<grounding::CannedTransport>(grounding::load_transcript(c.transcript));
    opts.workers = 1;
    auto * transport = canned.get();
    factory = [transport](const grounding::DialogueItem & item) {
        auto g = std::make_unique<grounding::RemoteGrounder>(*transport);
        g->set_conversation_id(item.id);
        return g;
      };
  } else {
    const std::string endpoint = c.endpoint;
    auto transports = std::make_shared<std::vector<std::unique_ptr<grounding::HttpTransport>>>();
    auto mutex = std::make_shared<std::mutex>();
    factory = [endpoint, api_key, transports, mutex](const grounding::DialogueItem & item) {
        grounding::HttpOptions o;
        o.endpoint = endpoint;
        o.api_key = api_key;
        auto t = std::make_unique<grounding::HttpTransport>(o);
        auto g = std::make_unique<grounding::RemoteGrounder>(*t);
        g->set_conversation_id(item.id);
        const std::lock_guard lock(*mutex);
        transports->push_back(std::move(t));
        return g;
      };
  }

  const metrics::MetricsReport report = metrics::evaluate_dataset(dataset, factory, opts);
  const fs::path dir = output_dir(c);
  write_file(dir / "report.csv", metrics::to_table(report));
  write_file(dir / "report.json", metrics::to_json(report));
  out << metrics::to_text(report);
  for (const auto & s : report.items) {
    if (!s.diagnostics.empty()) {
      err << s.item_id << ": " << s.diagnostics << "\n";
    }
  }
  if (report.aborted() > 0) {
    err << report.aborted() << " item(s) aborted on transport errors\n";
    return kTransportError;
  }
  return kOk;
}

// --- ground -----------------------------------------------------------------

int cmd_ground(
  const Config & c, const std::string & scene_path, int pose_index, bool interactive, bool show_map,
  const std::vector<std::string> & scripted_turns, std::istream & in, std::ostream & out, std::ostream & err)
{
  const world::Scene scene = load_scene_with(scene_path, c);
  const world::Pose & pose = pose_at(scene, pose_index);
  const Perception p = perceive(scene, world::rasterize_occupancy(scene), pose, perception_options(c));
  const grounding::GroundingContext context{&scene, &p, {}};

  if (show_map) {
    out << mission::render_overlay(p.online.base, {}, footprint_cells(p.online));
  }
  out << "visible objects:";
  for (const auto & e : p.entries) {
    out << " " << e.id;
  }
  out << "\n";

  std::unique_ptr<grounding::Transport> transport;
  std::unique_ptr<grounding::Grounder> grounder;
  const bool scripted = c.grounder == "scripted" || c.grounder == "perturbed";
  if (c.grounder == "scripted") {
    grounder = std::make_unique<grounding::ScriptedGrounder>();
  } else if (c.grounder == "perturbed") {
    grounder = std::make_unique<grounding::PerturbedGrounder>(c.seed);
  } else {
    if (c.grounder == "canned") {
      transport = std::make_unique<grounding::CannedTransport>(grounding::load_transcript(c.transcript));
    } else {
      grounding::HttpOptions o;
      o.endpoint = c.endpoint;
      if (const char * key = std::getenv(grounding::kApiKeyEnv); key != nullptr && *key != '\0') {
        o.api_key = key;
      }
      transport = std::make_unique<grounding::HttpTransport>(o);
    }
    grounder = std::make_unique<grounding::RemoteGrounder>(*transport);
  }
  grounder->begin(context);

  std::size_t next_scripted = 0;
  const auto next_line = [&](int turn) -> std::optional<std::string> {
      if (!scripted_turns.empty()) {
        if (next_scripted >= scripted_turns.size()) {
          return std::nullopt;
        }
        return scripted_turns[next_scripted++];
      }
      if (interactive) {
        out << "D" << turn << "> " << std::flush;
      }
      std::string line;
      while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
          return line;
        }
      }
      return std::nullopt;
    };

  std::optional<grounding::DialogueTurn> first;
  std::optional<std::string> resolved;
  for (int i = 1; i <= c.k_max && !resolved; ++i) {
    const auto line = next_line(i);
    if (!line) {
      break;
    }
    grounding::DialogueTurn turn;
    if (scripted) {
      turn = grounding::parse_turn_script(*line);
    } else {
      turn.text = *line;
    }
    if (!first) {
      first = turn;
    }
    const grounding::GrounderResponse r = grounder->step(turn);
    out << "R" << i << ": " << describe(r) << "\n";
    if (r.raw_text) {
      out << "    \"" << *r.raw_text << "\"\n";
    }
    if (r.status == grounding::GroundingStatus::Resolved) {
      resolved = r.candidates.front().object_id;
    }
  }
  if (!resolved) {
    err << "grounding failed: no unique object within " << c.k_max << " dialogue turn(s)\n";
    return kGroundingFailure;
  }

  grounding::MissionDraft draft;
  if (scripted) {
    draft = grounding::parse_first_dialogue(*first, context);
  } else {
    const auto verb = grounding::extract_action(first->text);
    if (!verb) {
      throw GroundingError("no action found in the first dialogue");
    }
    draft.action = *verb;
  }
  const mission::Mission m = mission::build_mission(draft, *resolved, p.online, pose, "mission-1");
  out << "mission: " << m.id << " action=" << m.action << " target=" << m.target_object_id
      << " cell=" << show(m.target_cell) << " time="
      << (m.immediate() ? std::string("immediate") : fixed(m.scheduled_time, 1)) << "\n";

  const world::OccupancyGrid grid = mission::inflate(planning_grid(p.online), c.inflation);
  const world::Cell start = grid.cell_of(pose.position);
  const mission::Path path = mission::plan_path(grid, start, m.target_cell);
  out << "path (" << path.cells.size() << " cells, cost " << fixed(path.cost) << "):";
  for (const auto & cell : path.cells) {
    out << " " << show(cell);
  }
  out << "\n";
  if (show_map) {
    const auto & fp = p.online.footprints.at(*resolved);
    out << mission::render_overlay(grid, path.cells, {fp.begin(), fp.end()});
  }
  return kOk;
}

// --- plan -------------------------------------------------------------------

int cmd_plan(
  const Config & c, const std::string & scene_path, const std::string & start_text, int pose_index,
  const std::string & goal_text, std::ostream & out)
{
  const world::Scene scene = load_scene_with(scene_path, c);
  const world::OccupancyGrid grid = mission::inflate(world::rasterize_occupancy(scene), c.inflation);
  const world::Cell start = start_text.empty() ?
    grid.cell_of(pose_at(scene, pose_index).position) : parse_cell(start_text);
  const world::Cell goal = parse_cell(goal_text);
  for (const auto & [name, cell] : {std::pair{"start", start}, std::pair{"goal", goal}}) {
    if (!grid.in_bounds(cell)) {
      throw ConfigError(std::string(name) + " cell " + show(cell) + " lies outside the map");
    }
  }
  const mission::Path path = mission::plan_path(grid, start, goal);
  out << "path (" << path.cells.size() << " cells, cost " << fixed(path.cost) << "):";
  for (const auto & cell : path.cells) {
    out << " " << show(cell);
  }
  out << "\n" << mission::render_overlay(grid, path.cells);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string> & args, std::istream & in, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Simulated two-level object mapping and dialogue grounding for navigation", "groundnav"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", f.seed, "Random seed");
  app.add_option("--out", f.out, "Output directory");

  int pose_index = 0;
  bool no_images = false;
  auto * simulate = app.add_subcommand("simulate", "Sweep, detect, deduplicate, annotate and map one pose");
  std::string sim_scene;
  simulate->add_option("scene", sim_scene, "Scene file")->required();
  simulate->add_option("--pose-index", pose_index, "Snapshot point index");
  simulate->add_option("--omega", f.omega, "Snapshots per sweep");
  simulate->add_option("--noise-sigma", f.noise_sigma, "Depth noise sigma (m)");
  simulate->add_flag("--no-images", no_images, "Skip the annotated P6 rasters");

  auto * evaluate = app.add_subcommand("evaluate", "Score a dialogue dataset");
  std::string dataset;
  std::vector<std::string> only_items;
  evaluate->add_option("dataset", dataset, "Dataset file")->required();
  evaluate->add_option("--item", only_items, "Evaluate only these item ids (repeatable)");
  evaluate->add_option("--grounder", f.grounder, "scripted | perturbed | canned | remote");
  evaluate->add_option("--transcript", f.transcript, "Canned transcript file");
  evaluate->add_option("--endpoint", f.endpoint, "Remote grounder base URL");
  evaluate->add_option("--weights", f.weights, "sr,as,ar,ns");
  evaluate->add_option("--k-max", f.k_max, "Maximum dialogue turns");
  evaluate->add_option("--workers", f.workers, "Worker threads");
  evaluate->add_option("--omega", f.omega, "Snapshots per sweep");
  evaluate->add_option("--noise-sigma", f.noise_sigma, "Depth noise sigma (m)");

  auto * ground = app.add_subcommand("ground", "Resolve an object by dialogue and plan a path to it");
  std::string ground_scene;
  bool interactive = false;
  bool show_map = false;
  std::vector<std::string> turns;
  ground->add_option("scene", ground_scene, "Scene file")->required();
  ground->add_option("--pose-index", pose_index, "Snapshot point index");
  ground->add_flag("--interactive", interactive, "Prompt for each dialogue turn");
  ground->add_flag("--show-map", show_map, "Print the footprint overlay");
  ground->add_option("--turn", turns, "Dialogue turn (repeatable); otherwise read from stdin");
  ground->add_option("--grounder", f.grounder, "scripted | perturbed | canned | remote");
  ground->add_option("--transcript", f.transcript, "Canned transcript file");
  ground->add_option("--endpoint", f.endpoint, "Remote grounder base URL");
  ground->add_option("--k-max", f.k_max, "Maximum dialogue turns");
  ground->add_option("--omega", f.omega, "Snapshots per sweep");
  ground->add_option("--inflation", f.inflation, "Obstacle inflation radius (m)");

  auto * plan = app.add_subcommand("plan", "Plan a grid path on a scene's occupancy map");
  std::string plan_scene;
  std::string start;
  std::string goal;
  plan->add_option("scene", plan_scene, "Scene file")->required();
  plan->add_option("--start", start, "Start cell row,col (default: snapshot point cell)");
  plan->add_option("--pose-index", pose_index, "Snapshot point used when --start is absent");
  plan->add_option("--goal", goal, "Goal cell row,col")->required();
  plan->add_option("--inflation", f.inflation, "Obstacle inflation radius (m)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError & e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    const Config c = resolve(f);
    if (*simulate) {
      return cmd_simulate(c, sim_scene, pose_index, !no_images, out);
    }
    if (*evaluate) {
      return cmd_evaluate(c, dataset, only_items, out, err);
    }
    if (*ground) {
      return cmd_ground(c, ground_scene, pose_index, interactive, show_map, turns, in, out, err);
    }
    return cmd_plan(c, plan_scene, start, pose_index, goal, out);
  } catch (const std::exception & e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace groundnav::cli
