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

#ifndef GROUNDNAV__GROUNDING_HPP_
#define GROUNDNAV__GROUNDING_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "groundnav/errors.hpp"
#include "groundnav/pipeline.hpp"
#include "groundnav/world.hpp"

namespace groundnav::grounding
{

using IdSet = std::set<std::string>;

/// Orders ids like "chair2" < "chair10": type prefix first, then the numeric
/// suffix.
bool id_less(const std::string & a, const std::string & b);

enum class ConstraintKind
{
  TypeIs,        // args: [type]
  Attribute,     // args: [key, value]
  NearestTo,     // args: [landmark]
  FarthestFrom,  // args: [landmark]
  NextTo,        // args: [landmark]; param "distance"
  LeftOf,        // args: [landmark]
  RightOf,       // args: [landmark]
  Between,       // args: [landmark, landmark]; param "distance"
  Facing,        // args: [landmark]; param "tolerance_deg"
  InImage,       // args: [snapshot index]
};

std::string to_string(ConstraintKind kind);
/// Throws DataError for unknown names.
ConstraintKind constraint_kind_from_string(const std::string & name);

struct Constraint
{
  ConstraintKind kind = ConstraintKind::TypeIs;
  std::vector<std::string> args;
  std::map<std::string, double> params;

  friend bool operator==(const Constraint &, const Constraint &) = default;
};

/// Parses one constraint expression, e.g. `left_of door1` or
/// `attribute subtype=high` or `next_to window1 distance=0.8`.
Constraint parse_constraint(const std::string & expr);
std::string format_constraint(const Constraint & c);

struct DialogueTurn
{
  std::string text;
  std::vector<Constraint> constraints;
  std::optional<std::string> action;
  std::optional<double> time;  // seconds; 0 = immediate
};

/// Parses a scripted input line: constraint expressions separated by ';',
/// plus optional `action <verb>` and `time <seconds|immediate>` clauses.
DialogueTurn parse_turn_script(const std::string & line);

enum class DialogueType {A, B};

struct DialogueItem
{
  std::string id;
  std::string space;
  std::string case_name;
  std::string scene_ref;
  int snapshot_point_index = 0;
  DialogueType type = DialogueType::A;
  std::vector<DialogueTurn> turns;
  std::string target_id;
  std::vector<IdSet> step_candidates;  // type B only
};

struct ConstraintSemantics
{
  double next_to_distance = 1.0;   // between footprint boundaries, m
  double between_distance = 0.5;   // point to landmark segment, m
  double facing_tolerance = deg_to_rad(30.0);
};

enum class GroundingStatus {Resolved, Ambiguous, NotFound};
std::string to_string(GroundingStatus status);

struct Candidate
{
  std::string object_id;
  int snapshot_index = 0;

  friend bool operator==(const Candidate &, const Candidate &) = default;
};

struct GrounderResponse
{
  GroundingStatus status = GroundingStatus::NotFound;
  std::vector<Candidate> candidates;
  std::optional<std::string> raw_text;

  /// Status follows the candidate count: 1 resolved, >=2 ambiguous, 0 not found.
  static GrounderResponse from(std::vector<Candidate> candidates, std::optional<std::string> raw = {});
  IdSet ids() const;
};

/// What a grounder can see: the scene (for the oracle) and one sweep.
struct GroundingContext
{
  const world::Scene * scene = nullptr;
  const Perception * perception = nullptr;
  ConstraintSemantics semantics;
};

IdSet all_ids(const Perception & perception);

/// Filters `candidates` down to the ids satisfying `c`. Landmarks are scene
/// object names; a candidate never satisfies a relation to itself. Throws
/// DataError for landmarks missing from the scene.
IdSet apply_constraint(
  const IdSet & candidates, const Constraint & c, const GroundingContext & context);

/// Folds every constraint of `turn` over `state`.
GrounderResponse ground_step_scripted(
  const IdSet & state, const DialogueTurn & turn, const GroundingContext & context);

struct MissionDraft
{
  double time = 0.0;
  std::string action;
  std::string object_type;
  std::vector<Constraint> position_constraints;
  GroundingStatus status = GroundingStatus::NotFound;
  bool ambiguous = false;
  IdSet candidates;
};

/// Splits the first dialogue into time/action/object/position parts and
/// checks it against the visible objects. Throws GroundingError when the turn
/// carries no action.
MissionDraft parse_first_dialogue(const DialogueTurn & turn, const GroundingContext & context);

/// Picks the action verb out of free text ("go", "take", ...), if any.
std::optional<std::string> extract_action(const std::string & text);

class Grounder
{
public:
  virtual ~Grounder() = default;
  /// Starts a fresh conversation over `context`.
  virtual void begin(const GroundingContext & context) = 0;
  virtual GrounderResponse step(const DialogueTurn & turn) = 0;
};

/// Deterministic constraint oracle. Keeps the last non-empty candidate set as
/// its dialogue state.
class ScriptedGrounder : public Grounder
{
public:
  void begin(const GroundingContext & context) override;
  GrounderResponse step(const DialogueTurn & turn) override;

private:
  GroundingContext context_;
  IdSet state_;
};

/// Scripted oracle that drops one seeded-random candidate from every
/// ambiguous reply. Used to check metric sensitivity.
class PerturbedGrounder : public Grounder
{
public:
  explicit PerturbedGrounder(std::uint64_t seed) : rng_(seed) {}
  void begin(const GroundingContext & context) override;
  GrounderResponse step(const DialogueTurn & turn) override;

private:
  ScriptedGrounder inner_;
  std::mt19937_64 rng_;
};

struct GroundingTrace
{
  std::string item_id;
  int k = 0;
  int alpha = 0;  // turns consumed; k + 1 on failure
  std::vector<IdSet> per_step_predictions;
  std::optional<std::string> resolved_id;
  std::vector<GrounderResponse> responses;
};

/// Dialogue aborted by a transport failure; carries what was recorded so far.
class DialogueAborted : public TransportError
{
public:
  DialogueAborted(const std::string & what, GroundingTrace partial)
  : TransportError(what), partial_(std::move(partial)) {}
  const GroundingTrace & partial() const {return partial_;}

private:
  GroundingTrace partial_;
};

/// Feeds turns to the grounder until one resolves or k = min(turns, k_max)
/// turns are used up.
GroundingTrace run_dialogue(
  const DialogueItem & item, Grounder & grounder, const GroundingContext & context, int k_max);

/// True when the recorded candidate sets never grow and a resolved trace ends
/// on exactly its resolved id.
bool trace_narrows(const GroundingTrace & trace);

}  // namespace groundnav::grounding

#endif  // GROUNDNAV__GROUNDING_HPP_
