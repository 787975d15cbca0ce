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

#ifndef GROUNDNAV__DATASET_HPP_
#define GROUNDNAV__DATASET_HPP_

#include <string>
#include <vector>

#include "groundnav/grounding.hpp"

namespace groundnav::grounding
{

/// Vision-dialogue dataset: fixed narrowing dialogue sequences over the
/// panoramas taken at scene snapshot points. Scene references are resolved
/// relative to `base_dir`.
struct Dataset
{
  std::string base_dir;
  std::vector<DialogueItem> items;
};

/// Parses and structurally validates a dataset document. Type-B items must
/// carry one candidate set per turn, each a subset of the previous one, ending
/// on {target_id}. Throws DataError naming the offending item.
Dataset parse_dataset(const std::string & text, const std::string & base_dir = ".");
Dataset load_dataset(const std::string & path);
std::string serialize_dataset(const Dataset & dataset);

void validate_item(const DialogueItem & item);

/// Replays the constraint oracle over `item` and checks it against the stored
/// ground truth: type-B step sets must match exactly, type-A targets must
/// survive every turn and be the only survivor at the end. Returns an empty
/// string when consistent, else a description of the first mismatch.
std::string check_against_oracle(const DialogueItem & item, const GroundingContext & context);

/// Per-turn cumulative oracle candidate sets for `turns`.
std::vector<IdSet> oracle_steps(const std::vector<DialogueTurn> & turns, const GroundingContext & context);

}  // namespace groundnav::grounding

#endif  // GROUNDNAV__DATASET_HPP_
