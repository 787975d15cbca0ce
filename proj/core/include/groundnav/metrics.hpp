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

#ifndef GROUNDNAV__METRICS_HPP_
#define GROUNDNAV__METRICS_HPP_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groundnav/dataset.hpp"
#include "groundnav/grounding.hpp"

namespace groundnav::metrics
{

using grounding::DialogueItem;
using grounding::DialogueType;
using grounding::GroundingTrace;

struct Weights
{
  double sr = 0.8;
  double as = 0.2;
  double ar = 0.6;
  double ns = 0.4;

  /// Throws ConfigError unless every weight is in [0,1] and each pair sums to 1.
  void validate() const;
  /// Parses "sr,as,ar,ns".
  static Weights parse(const std::string & text);
};

/// (k - (alpha - 1)) / k. Throws ConfigError for k < 1.
double success_rate(int alpha, int k);
double success_rate(const GroundingTrace & trace);

/// Mean over the consumed steps of found_i / beta_i, or 0 on failure. Steps
/// with an empty prediction contribute 0.
double accuracy_score(const GroundingTrace & trace, const std::string & target_id);

/// 1 when the dialogue resolved to the target, else 0.
double accuracy_rate(const GroundingTrace & trace, const std::string & target_id);

/// Mean per-step Jaccard similarity between the true and predicted candidate
/// sets. Sums over the recorded steps (at most k) and divides by alpha, so a
/// failed dialogue is divided by k + 1. Two empty sets count as 1.
double narrowing_score(const GroundingTrace & trace, const DialogueItem & item);

double jaccard(const grounding::IdSet & truth, const grounding::IdSet & predicted);

/// sum_s (w1 * first(s) + w2 * second(s)) / |S|. Throws DataError when empty.
double aggregate(const std::vector<std::pair<double, double>> & scores, double w1, double w2);
double aggregate(
  const std::vector<std::pair<double, double>> & scores, const Weights & weights, DialogueType type);

struct ItemScore
{
  std::string item_id;
  std::string space;
  std::string case_name;
  DialogueType type = DialogueType::A;
  int k = 0;
  int alpha = 0;
  double first = 0.0;   // SR (type A) or AR (type B)
  double second = 0.0;  // AS (type A) or NS (type B)
  std::optional<std::string> resolved_id;
  bool narrows = true;
  bool aborted = false;
  std::string diagnostics;
  grounding::GroundingTrace trace;
};

struct ReportRow
{
  std::string space;
  std::string case_name;
  DialogueType type = DialogueType::A;
  std::size_t items = 0;
  double first = 0.0;
  double second = 0.0;
  double total = 0.0;
};

struct MetricsReport
{
  Weights weights;
  std::vector<ReportRow> rows;     // per (space, case) in dataset order
  std::vector<ReportRow> overall;  // one row per dialogue type present
  std::vector<ItemScore> items;    // dataset order

  std::size_t aborted() const;
  /// Every row's total equals its weighted component means within `tol`.
  bool totals_consistent(double tol = 1e-9) const;
};

/// Delimiter-separated table: space,case,SR_or_AR,AS_or_NS,T.
std::string to_table(const MetricsReport & report, char delimiter = ',');
/// Structured report with weights, rows and item-level scores.
std::string to_json(const MetricsReport & report);
/// Aligned plain-text rendering for terminals.
std::string to_text(const MetricsReport & report);

using GrounderFactory = std::function<std::unique_ptr<grounding::Grounder>(const DialogueItem &)>;

struct EvaluationOptions
{
  Weights weights;
  int k_max = 5;
  int workers = 1;
  PerceptionOptions perception;
  grounding::ConstraintSemantics semantics;
};

/// Runs every item through a fresh grounder and scores it. Transport failures
/// are recorded as failed items (alpha = k + 1) with diagnostics. Items may
/// run on `workers` threads; results are reduced in dataset order.
MetricsReport evaluate_dataset(
  const grounding::Dataset & dataset, const GrounderFactory & make_grounder,
  const EvaluationOptions & options = {});

}  // namespace groundnav::metrics

#endif  // GROUNDNAV__METRICS_HPP_
