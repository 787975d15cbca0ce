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

#include "groundnav/grounding.hpp"

namespace groundnav::grounding
{

void ScriptedGrounder::begin(const GroundingContext & context)
{
  context_ = context;
  state_ = all_ids(*context.perception);
}

GrounderResponse ScriptedGrounder::step(const DialogueTurn & turn)
{
  GrounderResponse r = ground_step_scripted(state_, turn, context_);
  if (r.status != GroundingStatus::NotFound) {
    state_ = r.ids();
  }
  return r;
}

void PerturbedGrounder::begin(const GroundingContext & context)
{
  inner_.begin(context);
}

GrounderResponse PerturbedGrounder::step(const DialogueTurn & turn)
{
  GrounderResponse r = inner_.step(turn);
  if (r.status != GroundingStatus::Ambiguous) {
    return r;
  }
  std::vector<Candidate> kept = r.candidates;
  kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(rng_() % kept.size()));
  return GrounderResponse::from(std::move(kept), r.raw_text);
}

GroundingTrace run_dialogue(
  const DialogueItem & item, Grounder & grounder, const GroundingContext & context, int k_max)
{
  if (k_max < 1) {
    throw ConfigError("k_max must be at least 1");
  }
  GroundingTrace trace;
  trace.item_id = item.id;
  trace.k = std::min(static_cast<int>(item.turns.size()), k_max);
  trace.alpha = trace.k + 1;

  grounder.begin(context);
  for (int i = 0; i < trace.k; ++i) {
    GrounderResponse r;
    try {
      r = grounder.step(item.turns[static_cast<std::size_t>(i)]);
    } catch (const TransportError & e) {
      throw DialogueAborted(
              "item '" + item.id + "' aborted at turn " + std::to_string(i + 1) + ": " + e.what(),
              trace);
    }
    trace.per_step_predictions.push_back(r.ids());
    trace.responses.push_back(r);
    if (r.status == GroundingStatus::Resolved) {
      trace.alpha = i + 1;
      trace.resolved_id = r.candidates.front().object_id;
      break;
    }
  }
  return trace;
}

bool trace_narrows(const GroundingTrace & trace)
{
  const auto & steps = trace.per_step_predictions;
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (!std::includes(steps[i - 1].begin(), steps[i - 1].end(), steps[i].begin(), steps[i].end())) {
      return false;
    }
  }
  if (trace.resolved_id) {
    return !steps.empty() && steps.back() == IdSet{*trace.resolved_id};
  }
  return true;
}

}  // namespace groundnav::grounding
