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

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "groundnav/errors.hpp"
#include "groundnav/world.hpp"

namespace groundnav::world
{

namespace
{

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string line_context(std::string_view text, std::size_t byte)
{
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double number(const json & j, const char * key, const std::string & where)
{
  if (!j.contains(key)) {
    throw DataError(where + ": missing key '" + key + "'");
  }
  const json & v = j.at(key);
  if (!v.is_number()) {
    throw DataError(where + ": '" + key + "' must be a number");
  }
  return v.get<double>();
}

std::vector<double> tuple(const json & j, const char * key, std::size_t n, const std::string & where)
{
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != n) {
    throw DataError(where + ": '" + key + "' must be an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (const json & v : j.at(key)) {
    if (!v.is_number()) {
      throw DataError(where + ": '" + key + "' must contain numbers only");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

SceneObject parse_object(const json & j, std::size_t index)
{
  std::string where = "objects[" + std::to_string(index) + "]";
  if (!j.is_object()) {
    throw DataError(where + ": expected an object");
  }
  SceneObject obj;
  if (!j.contains("name") || !j.at("name").is_string()) {
    throw DataError(where + ": missing string 'name'");
  }
  obj.name = j.at("name").get<std::string>();
  where = "object '" + obj.name + "'";
  if (!j.contains("type") || !j.at("type").is_string()) {
    throw DataError(where + ": missing string 'type'");
  }
  obj.type = j.at("type").get<std::string>();
  if (j.contains("attributes")) {
    if (!j.at("attributes").is_object()) {
      throw DataError(where + ": 'attributes' must be an object");
    }
    for (const auto & [key, value] : j.at("attributes").items()) {
      obj.attributes[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  const auto c = tuple(j, "center", 3, where);
  const auto s = tuple(j, "size", 3, where);
  obj.center = {c[0], c[1], c[2]};
  obj.size = {s[0], s[1], s[2]};
  obj.yaw = j.contains("yaw_deg") ? normalize_angle(deg_to_rad(number(j, "yaw_deg", where))) : 0.0;
  return obj;
}

}  // namespace

Scene load_scene(std::string_view text)
{
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error & e) {
    throw DataError("scene parse error at " + line_context(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw DataError("scene document must be an object");
  }

  Scene scene;
  if (!doc.contains("bounds") || !doc.at("bounds").is_object()) {
    throw DataError("scene: missing 'bounds'");
  }
  const auto lo = tuple(doc.at("bounds"), "min", 2, "bounds");
  const auto hi = tuple(doc.at("bounds"), "max", 2, "bounds");
  scene.bounds = {{lo[0], lo[1]}, {hi[0], hi[1]}};
  if (doc.contains("resolution")) {
    scene.resolution = number(doc, "resolution", "scene");
  }
  if (doc.contains("camera")) {
    const json & cam = doc.at("camera");
    if (!cam.is_object()) {
      throw DataError("scene: 'camera' must be an object");
    }
    scene.camera.fov_x = deg_to_rad(number(cam, "fov_x_deg", "camera"));
    scene.camera.fov_y = deg_to_rad(number(cam, "fov_y_deg", "camera"));
    scene.camera.width_px = static_cast<int>(number(cam, "width_px", "camera"));
    scene.camera.height_px = static_cast<int>(number(cam, "height_px", "camera"));
    scene.camera.mount_height = number(cam, "mount_height", "camera");
  }
  if (doc.contains("objects")) {
    if (!doc.at("objects").is_array()) {
      throw DataError("scene: 'objects' must be an array");
    }
    std::size_t i = 0;
    for (const json & o : doc.at("objects")) {
      scene.objects.push_back(parse_object(o, i++));
    }
  }
  if (doc.contains("snapshot_points")) {
    if (!doc.at("snapshot_points").is_array()) {
      throw DataError("scene: 'snapshot_points' must be an array");
    }
    std::size_t i = 0;
    for (const json & p : doc.at("snapshot_points")) {
      const std::string where = "snapshot_points[" + std::to_string(i++) + "]";
      const auto pos = tuple(p, "position", 2, where);
      const double heading = p.contains("heading_deg") ? number(p, "heading_deg", where) : 0.0;
      scene.snapshot_points.push_back({{pos[0], pos[1]}, normalize_angle(deg_to_rad(heading))});
    }
  }
  validate(scene);
  return scene;
}

Scene load_scene_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open scene file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return load_scene(buffer.str());
  } catch (const DataError & e) {
    throw DataError(path + ": " + e.what());
  }
}

namespace
{

// Degrees rounded to 1e-9 so that file -> radians -> file is stable.
double file_degrees(double radians)
{
  return std::round(rad_to_deg(radians) * 1e9) / 1e9;
}

}  // namespace

std::string serialize_scene(const Scene & scene)
{
  ordered_json doc;
  doc["bounds"] = {
    {"min", {scene.bounds.min.x, scene.bounds.min.y}},
    {"max", {scene.bounds.max.x, scene.bounds.max.y}}};
  doc["resolution"] = scene.resolution;
  doc["camera"] = {
    {"fov_x_deg", file_degrees(scene.camera.fov_x)},
    {"fov_y_deg", file_degrees(scene.camera.fov_y)},
    {"width_px", scene.camera.width_px},
    {"height_px", scene.camera.height_px},
    {"mount_height", scene.camera.mount_height}};
  ordered_json objects = ordered_json::array();
  for (const auto & obj : scene.objects) {
    ordered_json attrs = ordered_json::object();
    for (const auto & [k, v] : obj.attributes) {
      attrs[k] = v;
    }
    objects.push_back({
        {"name", obj.name},
        {"type", obj.type},
        {"attributes", attrs},
        {"center", {obj.center.x, obj.center.y, obj.center.z}},
        {"size", {obj.size.x, obj.size.y, obj.size.z}},
        {"yaw_deg", file_degrees(obj.yaw)}});
  }
  doc["objects"] = objects;
  ordered_json points = ordered_json::array();
  for (const auto & p : scene.snapshot_points) {
    points.push_back({
        {"position", {p.position.x, p.position.y}},
        {"heading_deg", file_degrees(p.heading)}});
  }
  doc["snapshot_points"] = points;
  return doc.dump(2) + "\n";
}

bool equivalent(const Scene & a, const Scene & b, double tolerance)
{
  const auto near = [tolerance](double x, double y) {return std::abs(x - y) <= tolerance;};
  const auto near2 = [&](Vec2 x, Vec2 y) {return near(x.x, y.x) && near(x.y, y.y);};
  const auto near3 = [&](Vec3 x, Vec3 y) {
      return near(x.x, y.x) && near(x.y, y.y) && near(x.z, y.z);
    };
  const auto near_angle = [&](double x, double y) {
      return std::abs(normalize_angle(x - y)) <= tolerance;
    };

  if (!near2(a.bounds.min, b.bounds.min) || !near2(a.bounds.max, b.bounds.max) ||
    !near(a.resolution, b.resolution))
  {
    return false;
  }
  const CameraModel & ca = a.camera;
  const CameraModel & cb = b.camera;
  if (!near(ca.fov_x, cb.fov_x) || !near(ca.fov_y, cb.fov_y) || ca.width_px != cb.width_px ||
    ca.height_px != cb.height_px || !near(ca.mount_height, cb.mount_height))
  {
    return false;
  }
  if (a.objects.size() != b.objects.size() || a.snapshot_points.size() != b.snapshot_points.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.objects.size(); ++i) {
    const auto & oa = a.objects[i];
    const auto & ob = b.objects[i];
    if (oa.name != ob.name || oa.type != ob.type || oa.attributes != ob.attributes ||
      !near3(oa.center, ob.center) || !near3(oa.size, ob.size) || !near_angle(oa.yaw, ob.yaw))
    {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.snapshot_points.size(); ++i) {
    if (!near2(a.snapshot_points[i].position, b.snapshot_points[i].position) ||
      !near_angle(a.snapshot_points[i].heading, b.snapshot_points[i].heading))
    {
      return false;
    }
  }
  return true;
}

}  // namespace groundnav::world
