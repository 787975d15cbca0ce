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

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>

#include "groundnav/grounding.hpp"

namespace groundnav::grounding
{

namespace
{

std::pair<std::string, long long> split_id(const std::string & id)
{
  std::size_t cut = id.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(id[cut - 1]))) {
    --cut;
  }
  if (cut == id.size() || id.size() - cut > 18) {
    return {id, -1};
  }
  return {id.substr(0, cut), std::stoll(id.substr(cut))};
}

std::string trim(const std::string & s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s)
{
  for (char & c : s) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

const std::vector<std::pair<ConstraintKind, std::string>> & kind_names()
{
  static const std::vector<std::pair<ConstraintKind, std::string>> names = {
    {ConstraintKind::TypeIs, "type_is"},
    {ConstraintKind::Attribute, "attribute"},
    {ConstraintKind::NearestTo, "nearest_to"},
    {ConstraintKind::FarthestFrom, "farthest_from"},
    {ConstraintKind::NextTo, "next_to"},
    {ConstraintKind::LeftOf, "left_of"},
    {ConstraintKind::RightOf, "right_of"},
    {ConstraintKind::Between, "between"},
    {ConstraintKind::Facing, "facing"},
    {ConstraintKind::InImage, "in_image"},
  };
  return names;
}

std::size_t expected_args(ConstraintKind kind)
{
  switch (kind) {
    case ConstraintKind::Attribute:
    case ConstraintKind::Between:
      return 2;
    default:
      return 1;
  }
}

double param_or(const Constraint & c, const char * key, double fallback)
{
  const auto it = c.params.find(key);
  return it == c.params.end() ? fallback : it->second;
}

const world::SceneObject & object_of(const std::string & id, const GroundingContext & ctx)
{
  const sensing::ObjectEntry * entry = ctx.perception->entry(id);
  if (entry == nullptr) {
    throw DataError("unknown object id '" + id + "'");
  }
  return ctx.scene->at(entry->object_name);
}

const world::SceneObject & landmark(const std::string & name, const GroundingContext & ctx)
{
  const world::SceneObject * obj = ctx.scene->find(name);
  if (obj == nullptr) {
    throw DataError("landmark '" + name + "' is not in the scene");
  }
  return *obj;
}

/// Keeps the single candidate with the best score; ties go to the lowest id.
IdSet extreme(const IdSet & candidates, const std::function<double(const std::string &)> & score)
{
  std::optional<std::string> best;
  double best_score = std::numeric_limits<double>::infinity();
  for (const auto & id : candidates) {
    const double s = score(id);
    if (!std::isfinite(s)) {
      continue;
    }
    if (!best || s < best_score - 1e-12 || (std::abs(s - best_score) <= 1e-12 && id_less(id, *best))) {
      best = id;
      best_score = s;
    }
  }
  return best ? IdSet{*best} : IdSet{};
}

/// Shortest %g rendering that parses back to the same double.
std::string shortest(double v)
{
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) {
      break;
    }
  }
  return buf;
}

}  // namespace

bool id_less(const std::string & a, const std::string & b)
{
  const auto [pa, na] = split_id(a);
  const auto [pb, nb] = split_id(b);
  if (pa != pb) {
    return pa < pb;
  }
  if (na != nb) {
    return na < nb;
  }
  return a < b;
}

std::string to_string(ConstraintKind kind)
{
  for (const auto & [k, name] : kind_names()) {
    if (k == kind) {
      return name;
    }
  }
  return "unknown";
}

ConstraintKind constraint_kind_from_string(const std::string & name)
{
  for (const auto & [k, n] : kind_names()) {
    if (n == name) {
      return k;
    }
  }
  throw DataError("unknown constraint kind '" + name + "'");
}

std::string to_string(GroundingStatus status)
{
  switch (status) {
    case GroundingStatus::Resolved: return "resolved";
    case GroundingStatus::Ambiguous: return "ambiguous";
    case GroundingStatus::NotFound: return "not_found";
  }
  return "not_found";
}

Constraint parse_constraint(const std::string & expr)
{
  std::istringstream in(expr);
  std::string head;
  if (!(in >> head)) {
    throw DataError("empty constraint expression");
  }
  Constraint c;
  c.kind = constraint_kind_from_string(lower(head));
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) {
      c.args.push_back(tok);
      continue;
    }
    const std::string key = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    if (c.kind == ConstraintKind::Attribute && c.args.empty()) {
      c.args = {key, value};
      continue;
    }
    try {
      std::size_t used = 0;
      c.params[key] = std::stod(value, &used);
      if (used != value.size()) {
        throw std::invalid_argument(value);
      }
    } catch (const std::exception &) {
      throw DataError("constraint parameter '" + tok + "' is not numeric");
    }
  }
  if (c.args.size() != expected_args(c.kind)) {
    throw DataError(
            "constraint '" + head + "' takes " + std::to_string(expected_args(c.kind)) +
            " argument(s), got " + std::to_string(c.args.size()));
  }
  return c;
}

std::string format_constraint(const Constraint & c)
{
  std::string out = to_string(c.kind);
  if (c.kind == ConstraintKind::Attribute && c.args.size() == 2) {
    out += " " + c.args[0] + "=" + c.args[1];
  } else {
    for (const auto & a : c.args) {
      out += " " + a;
    }
  }
  for (const auto & [k, v] : c.params) {
    out += " " + k + "=" + shortest(v);
  }
  return out;
}

DialogueTurn parse_turn_script(const std::string & line)
{
  DialogueTurn turn;
  turn.text = trim(line);
  std::stringstream ss(line);
  std::string clause;
  while (std::getline(ss, clause, ';')) {
    clause = trim(clause);
    if (clause.empty()) {
      continue;
    }
    std::istringstream words(clause);
    std::string head;
    words >> head;
    head = lower(head);
    if (head == "action") {
      std::string verb;
      std::getline(words, verb);
      turn.action = trim(verb);
      if (turn.action->empty()) {
        throw DataError("'action' needs a verb");
      }
    } else if (head == "time") {
      std::string when;
      words >> when;
      if (lower(when) == "immediate" || lower(when) == "now") {
        turn.time = 0.0;
      } else {
        try {
          turn.time = std::stod(when);
        } catch (const std::exception &) {
          throw DataError("'time' expects seconds or 'immediate', got '" + when + "'");
        }
        if (*turn.time < 0.0) {
          throw DataError("'time' must be non-negative");
        }
      }
    } else {
      turn.constraints.push_back(parse_constraint(clause));
    }
  }
  return turn;
}

IdSet all_ids(const Perception & perception)
{
  IdSet ids;
  for (const auto & e : perception.entries) {
    ids.insert(e.id);
  }
  return ids;
}

IdSet apply_constraint(
  const IdSet & candidates, const Constraint & c, const GroundingContext & ctx)
{
  if (c.args.size() != expected_args(c.kind)) {
    throw DataError("constraint '" + to_string(c.kind) + "' has the wrong number of arguments");
  }
  const auto keep_if = [&](const auto & pred) {
      IdSet out;
      for (const auto & id : candidates) {
        if (pred(id, object_of(id, ctx))) {
          out.insert(id);
        }
      }
      return out;
    };
  const Vec2 robot = ctx.perception->pose.position;

  switch (c.kind) {
    case ConstraintKind::TypeIs:
      return keep_if([&](const std::string &, const world::SceneObject & o) {
                 return o.type == c.args[0];
               });
    case ConstraintKind::Attribute:
      return keep_if([&](const std::string &, const world::SceneObject & o) {
                 const auto it = o.attributes.find(c.args[0]);
                 return it != o.attributes.end() && it->second == c.args[1];
               });
    case ConstraintKind::NearestTo:
    case ConstraintKind::FarthestFrom: {
        const world::SceneObject & lm = landmark(c.args[0], ctx);
        const double sign = c.kind == ConstraintKind::NearestTo ? 1.0 : -1.0;
        return extreme(candidates, [&](const std::string & id) {
                   const world::SceneObject & o = object_of(id, ctx);
                   if (o.name == lm.name) {
                     return std::numeric_limits<double>::infinity();
                   }
                   return sign * distance(o.ground_center(), lm.ground_center());
                 });
      }
    case ConstraintKind::NextTo: {
        const world::SceneObject & lm = landmark(c.args[0], ctx);
        const double limit = param_or(c, "distance", ctx.semantics.next_to_distance);
        return keep_if([&](const std::string &, const world::SceneObject & o) {
                   return o.name != lm.name && rect_distance(o.footprint(), lm.footprint()) <= limit;
                 });
      }
    case ConstraintKind::LeftOf:
    case ConstraintKind::RightOf: {
        const world::SceneObject & lm = landmark(c.args[0], ctx);
        const Vec2 to_lm = lm.ground_center() - robot;
        const double lm_bearing = std::atan2(to_lm.y, to_lm.x);
        const bool left = c.kind == ConstraintKind::LeftOf;
        return keep_if([&](const std::string &, const world::SceneObject & o) {
                   if (o.name == lm.name) {
                     return false;
                   }
                   const Vec2 to_o = o.ground_center() - robot;
                   // Signed azimuth relative to the landmark, growing with image x.
                   const double rel = normalize_angle(std::atan2(to_o.y, to_o.x) - lm_bearing);
                   return left ? rel < 0.0 : rel > 0.0;
                 });
      }
    case ConstraintKind::Between: {
        const world::SceneObject & a = landmark(c.args[0], ctx);
        const world::SceneObject & b = landmark(c.args[1], ctx);
        const double limit = param_or(c, "distance", ctx.semantics.between_distance);
        return keep_if([&](const std::string &, const world::SceneObject & o) {
                   return o.name != a.name && o.name != b.name &&
                   point_segment_distance(o.ground_center(), a.ground_center(), b.ground_center()) < limit;
                 });
      }
    case ConstraintKind::Facing: {
        const world::SceneObject & lm = landmark(c.args[0], ctx);
        const double tol = c.params.count("tolerance_deg") ?
          deg_to_rad(c.params.at("tolerance_deg")) : ctx.semantics.facing_tolerance;
        return keep_if([&](const std::string &, const world::SceneObject & o) {
                   if (o.name == lm.name) {
                     return false;
                   }
                   const Vec2 d = lm.ground_center() - o.ground_center();
                   return std::abs(normalize_angle(o.yaw - std::atan2(d.y, d.x))) <= tol + 1e-12;
                 });
      }
    case ConstraintKind::InImage: {
        int index = 0;
        try {
          index = std::stoi(c.args[0]);
        } catch (const std::exception &) {
          throw DataError("in_image expects a snapshot index, got '" + c.args[0] + "'");
        }
        IdSet out;
        for (const auto & id : candidates) {
          const sensing::ObjectEntry * e = ctx.perception->entry(id);
          if (e == nullptr) {
            throw DataError("unknown object id '" + id + "'");
          }
          for (const auto & d : e->detections) {
            if (d.snapshot_index == index) {
              out.insert(id);
              break;
            }
          }
        }
        return out;
      }
  }
  return {};
}

GrounderResponse GrounderResponse::from(
  std::vector<Candidate> candidates, std::optional<std::string> raw)
{
  GrounderResponse r;
  r.candidates = std::move(candidates);
  r.raw_text = std::move(raw);
  r.status = r.candidates.empty() ? GroundingStatus::NotFound :
    r.candidates.size() == 1 ? GroundingStatus::Resolved : GroundingStatus::Ambiguous;
  return r;
}

IdSet GrounderResponse::ids() const
{
  IdSet out;
  for (const auto & c : candidates) {
    out.insert(c.object_id);
  }
  return out;
}

GrounderResponse ground_step_scripted(
  const IdSet & state, const DialogueTurn & turn, const GroundingContext & context)
{
  IdSet current = state;
  for (const Constraint & c : turn.constraints) {
    current = apply_constraint(current, c, context);
  }
  std::vector<std::string> ordered(current.begin(), current.end());
  std::sort(ordered.begin(), ordered.end(), id_less);
  std::vector<Candidate> candidates;
  for (const auto & id : ordered) {
    candidates.push_back({id, context.perception->entry(id)->best_detection().snapshot_index});
  }
  return GrounderResponse::from(std::move(candidates));
}

std::optional<std::string> extract_action(const std::string & text)
{
  static const std::vector<std::string> verbs = {
    "go", "navigate", "move", "drive", "head", "take", "bring", "fetch", "deliver",
    "find", "visit", "clean", "pick", "wait", "inspect"};
  std::string word;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char ch = i < text.size() ? text[i] : ' ';
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      word += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      continue;
    }
    if (!word.empty() && std::find(verbs.begin(), verbs.end(), word) != verbs.end()) {
      return word;
    }
    word.clear();
  }
  return std::nullopt;
}

MissionDraft parse_first_dialogue(const DialogueTurn & turn, const GroundingContext & context)
{
  MissionDraft draft;
  if (turn.action) {
    draft.action = *turn.action;
  } else if (auto verb = extract_action(turn.text)) {
    draft.action = *verb;
  } else {
    throw GroundingError("no action found in the first dialogue");
  }
  draft.time = turn.time.value_or(0.0);
  for (const Constraint & c : turn.constraints) {
    if (c.kind == ConstraintKind::TypeIs) {
      draft.object_type = c.args[0];
    } else {
      draft.position_constraints.push_back(c);
    }
  }
  const GrounderResponse r = ground_step_scripted(all_ids(*context.perception), turn, context);
  draft.status = r.status;
  draft.candidates = r.ids();
  draft.ambiguous = r.status == GroundingStatus::Ambiguous;
  return draft;
}

}  // namespace groundnav::grounding
