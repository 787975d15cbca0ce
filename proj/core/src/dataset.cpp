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

#include "groundnav/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace groundnav::grounding
{

namespace
{

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

Constraint constraint_from_json(const json & j)
{
  if (j.is_string()) {
    return parse_constraint(j.get<std::string>());
  }
  if (!j.is_object() || !j.contains("kind")) {
    throw DataError("constraint must be an expression string or {kind, args, params}");
  }
  Constraint c;
  c.kind = constraint_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("args")) {
    for (const auto & a : j.at("args")) {
      c.args.push_back(a.is_string() ? a.get<std::string>() : a.dump());
    }
  }
  if (j.contains("params")) {
    for (const auto & [k, v] : j.at("params").items()) {
      c.params[k] = v.get<double>();
    }
  }
  return c;
}

IdSet id_set(const json & j)
{
  IdSet out;
  for (const auto & v : j) {
    out.insert(v.get<std::string>());
  }
  return out;
}

ordered_json sorted_ids(const IdSet & ids)
{
  std::vector<std::string> v(ids.begin(), ids.end());
  std::sort(v.begin(), v.end(), id_less);
  return ordered_json(v);
}

DialogueItem item_from_json(const json & j, std::size_t index)
{
  DialogueItem item;
  item.id = j.value("id", "");
  const std::string where = item.id.empty() ? "items[" + std::to_string(index) + "]" : "item '" + item.id + "'";
  try {
    item.id = j.at("id").get<std::string>();
    item.space = j.at("space").get<std::string>();
    item.case_name = j.value("case", item.space);
    item.scene_ref = j.at("scene").get<std::string>();
    item.snapshot_point_index = j.value("snapshot_point", 0);
    const std::string type = j.at("type").get<std::string>();
    if (type != "A" && type != "B") {
      throw DataError("type must be \"A\" or \"B\"");
    }
    item.type = type == "A" ? DialogueType::A : DialogueType::B;
    item.target_id = j.at("target_id").get<std::string>();
    for (const auto & t : j.at("turns")) {
      DialogueTurn turn;
      turn.text = t.at("text").get<std::string>();
      for (const auto & c : t.at("constraints")) {
        turn.constraints.push_back(constraint_from_json(c));
      }
      if (t.contains("action")) {
        turn.action = t.at("action").get<std::string>();
      }
      if (t.contains("time")) {
        turn.time = t.at("time").get<double>();
      }
      item.turns.push_back(std::move(turn));
    }
    if (j.contains("step_candidates")) {
      for (const auto & s : j.at("step_candidates")) {
        item.step_candidates.push_back(id_set(s));
      }
    }
  } catch (const json::exception & e) {
    throw DataError(where + ": " + e.what());
  } catch (const DataError & e) {
    throw DataError(where + ": " + e.what());
  }
  return item;
}

}  // namespace

void validate_item(const DialogueItem & item)
{
  const std::string where = "item '" + item.id + "': ";
  if (item.id.empty()) {
    throw DataError("dataset item with empty id");
  }
  if (item.turns.empty()) {
    throw DataError(where + "has no turns");
  }
  for (std::size_t i = 0; i < item.turns.size(); ++i) {
    if (item.turns[i].constraints.empty()) {
      throw DataError(where + "turn " + std::to_string(i + 1) + " has no constraints");
    }
  }
  if (item.target_id.empty()) {
    throw DataError(where + "has no target_id");
  }
  if (item.type == DialogueType::A) {
    return;
  }
  if (item.step_candidates.size() != item.turns.size()) {
    throw DataError(where + "type-B items need one candidate set per turn");
  }
  for (std::size_t i = 0; i < item.step_candidates.size(); ++i) {
    const IdSet & cur = item.step_candidates[i];
    if (cur.empty()) {
      throw DataError(where + "candidate set " + std::to_string(i + 1) + " is empty");
    }
    if (i > 0) {
      const IdSet & prev = item.step_candidates[i - 1];
      if (!std::includes(prev.begin(), prev.end(), cur.begin(), cur.end())) {
        throw DataError(where + "candidate set " + std::to_string(i + 1) + " is not a subset of the previous one");
      }
    }
  }
  if (item.step_candidates.back() != IdSet{item.target_id}) {
    throw DataError(where + "final candidate set must be exactly {" + item.target_id + "}");
  }
}

Dataset parse_dataset(const std::string & text, const std::string & base_dir)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error & e) {
    throw DataError(std::string("dataset parse error: ") + e.what());
  }
  const json * items = nullptr;
  if (doc.is_array()) {
    items = &doc;
  } else if (doc.is_object() && doc.contains("items") && doc.at("items").is_array()) {
    items = &doc.at("items");
  } else {
    throw DataError("dataset must be a list of items or an object with an 'items' list");
  }
  Dataset ds;
  ds.base_dir = base_dir;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < items->size(); ++i) {
    DialogueItem item = item_from_json(items->at(i), i);
    validate_item(item);
    if (!ids.insert(item.id).second) {
      throw DataError("duplicate dataset item id '" + item.id + "'");
    }
    ds.items.push_back(std::move(item));
  }
  return ds;
}

Dataset load_dataset(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open dataset '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_dataset(buffer.str(), dir.empty() ? "." : dir.string());
}

std::string serialize_dataset(const Dataset & dataset)
{
  ordered_json items = ordered_json::array();
  for (const auto & item : dataset.items) {
    ordered_json j;
    j["id"] = item.id;
    j["space"] = item.space;
    j["case"] = item.case_name;
    j["scene"] = item.scene_ref;
    j["snapshot_point"] = item.snapshot_point_index;
    j["type"] = item.type == DialogueType::A ? "A" : "B";
    j["target_id"] = item.target_id;
    j["turns"] = ordered_json::array();
    for (const auto & t : item.turns) {
      ordered_json turn;
      turn["text"] = t.text;
      turn["constraints"] = ordered_json::array();
      for (const auto & c : t.constraints) {
        turn["constraints"].push_back(format_constraint(c));
      }
      if (t.action) {
        turn["action"] = *t.action;
      }
      if (t.time) {
        turn["time"] = *t.time;
      }
      j["turns"].push_back(std::move(turn));
    }
    if (item.type == DialogueType::B) {
      j["step_candidates"] = ordered_json::array();
      for (const auto & s : item.step_candidates) {
        j["step_candidates"].push_back(sorted_ids(s));
      }
    }
    items.push_back(std::move(j));
  }
  ordered_json doc;
  doc["version"] = 1;
  doc["items"] = std::move(items);
  return doc.dump(2) + "\n";
}

std::vector<IdSet> oracle_steps(const std::vector<DialogueTurn> & turns, const GroundingContext & context)
{
  std::vector<IdSet> out;
  IdSet state = all_ids(*context.perception);
  for (const auto & turn : turns) {
    const IdSet next = ground_step_scripted(state, turn, context).ids();
    out.push_back(next);
    if (!next.empty()) {
      state = next;
    }
  }
  return out;
}

std::string check_against_oracle(const DialogueItem & item, const GroundingContext & context)
{
  const auto steps = oracle_steps(item.turns, context);
  const auto show = [](const IdSet & s) {
      std::string out = "{";
      for (const auto & id : s) {
        out += (out.size() > 1 ? "," : "") + id;
      }
      return out + "}";
    };
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string turn = "turn " + std::to_string(i + 1);
    if (item.type == DialogueType::B) {
      if (steps[i] != item.step_candidates[i]) {
        return turn + ": oracle gives " + show(steps[i]) + ", dataset says " + show(item.step_candidates[i]);
      }
    } else if (steps[i].count(item.target_id) == 0) {
      return turn + ": oracle set " + show(steps[i]) + " lost target " + item.target_id;
    }
  }
  if (steps.back() != IdSet{item.target_id}) {
    return "final oracle set " + show(steps.back()) + " is not {" + item.target_id + "}";
  }
  return {};
}

}  // namespace groundnav::grounding
