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
#include <atomic>
#include <filesystem>
#include <map>
#include <thread>

#include "groundnav/metrics.hpp"

namespace groundnav::metrics
{

namespace
{

struct Prepared
{
  world::Scene scene;
  Perception perception;
};

using Key = std::pair<std::string, int>;

std::map<Key, std::shared_ptr<const Prepared>> prepare(
  const grounding::Dataset & dataset, const EvaluationOptions & options)
{
  std::map<std::string, world::Scene> scenes;
  std::map<Key, std::shared_ptr<const Prepared>> out;
  for (const auto & item : dataset.items) {
    const Key key{item.scene_ref, item.snapshot_point_index};
    if (out.count(key) != 0) {
      continue;
    }
    auto it = scenes.find(item.scene_ref);
    if (it == scenes.end()) {
      const auto path = (std::filesystem::path(dataset.base_dir) / item.scene_ref).string();
      try {
        it = scenes.emplace(item.scene_ref, world::load_scene_file(path)).first;
      } catch (const Error & e) {
        throw DataError("item '" + item.id + "': scene '" + item.scene_ref + "': " + e.what());
      }
    }
    const world::Scene & scene = it->second;
    if (item.snapshot_point_index < 0 ||
      static_cast<std::size_t>(item.snapshot_point_index) >= scene.snapshot_points.size())
    {
      throw DataError(
              "item '" + item.id + "': snapshot point " + std::to_string(item.snapshot_point_index) +
              " out of range");
    }
    auto prepared = std::make_shared<Prepared>();
    prepared->scene = scene;
    prepared->perception = perceive(
      scene, world::rasterize_occupancy(scene),
      scene.snapshot_points[static_cast<std::size_t>(item.snapshot_point_index)], options.perception);
    out.emplace(key, std::move(prepared));
  }
  return out;
}

ItemScore score_item(
  const DialogueItem & item, const Prepared & prepared, const GrounderFactory & make_grounder,
  const EvaluationOptions & options)
{
  ItemScore s;
  s.item_id = item.id;
  s.space = item.space;
  s.case_name = item.case_name;
  s.type = item.type;

  const grounding::GroundingContext context{&prepared.scene, &prepared.perception, options.semantics};
  try {
    auto grounder = make_grounder(item);
    s.trace = grounding::run_dialogue(item, *grounder, context, options.k_max);
  } catch (const grounding::DialogueAborted & e) {
    s.trace = e.partial();
    s.trace.alpha = s.trace.k + 1;
    s.trace.resolved_id.reset();
    s.aborted = true;
    s.diagnostics = e.what();
  } catch (const GroundingError & e) {
    s.trace = {};
    s.trace.item_id = item.id;
    s.trace.k = std::min(static_cast<int>(item.turns.size()), options.k_max);
    s.trace.alpha = s.trace.k + 1;
    s.diagnostics = e.what();
  }
  s.k = s.trace.k;
  s.alpha = s.trace.alpha;
  s.resolved_id = s.trace.resolved_id;
  s.narrows = grounding::trace_narrows(s.trace);
  if (item.type == DialogueType::A) {
    s.first = success_rate(s.trace);
    s.second = accuracy_score(s.trace, item.target_id);
  } else {
    s.first = accuracy_rate(s.trace, item.target_id);
    s.second = narrowing_score(s.trace, item);
  }
  return s;
}

ReportRow make_row(
  const std::string & space, const std::string & case_name, DialogueType type,
  const std::vector<const ItemScore *> & scores, const Weights & weights)
{
  ReportRow row;
  row.space = space;
  row.case_name = case_name;
  row.type = type;
  row.items = scores.size();
  std::vector<std::pair<double, double>> pairs;
  for (const auto * s : scores) {
    row.first += s->first;
    row.second += s->second;
    pairs.emplace_back(s->first, s->second);
  }
  row.first /= static_cast<double>(scores.size());
  row.second /= static_cast<double>(scores.size());
  row.total = aggregate(pairs, weights, type);
  return row;
}

}  // namespace

MetricsReport evaluate_dataset(
  const grounding::Dataset & dataset, const GrounderFactory & make_grounder,
  const EvaluationOptions & options)
{
  if (dataset.items.empty()) {
    throw DataError("dataset has no items");
  }
  if (options.workers < 1) {
    throw ConfigError("workers must be at least 1");
  }
  options.weights.validate();
  const auto prepared = prepare(dataset, options);

  MetricsReport report;
  report.weights = options.weights;
  report.items.resize(dataset.items.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&]() {
      for (std::size_t i = next++; i < dataset.items.size(); i = next++) {
        const auto & item = dataset.items[i];
        try {
          report.items[i] = score_item(
            item, *prepared.at({item.scene_ref, item.snapshot_point_index}), make_grounder, options);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
          next = dataset.items.size();
        }
      }
    };
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(options.workers), dataset.items.size());
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) {
      pool.emplace_back(work);
    }
    for (auto & t : pool) {
      t.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  std::vector<std::tuple<std::string, std::string, DialogueType>> order;
  std::map<std::tuple<std::string, std::string, DialogueType>, std::vector<const ItemScore *>> groups;
  std::map<DialogueType, std::vector<const ItemScore *>> by_type;
  for (const auto & s : report.items) {
    const auto key = std::make_tuple(s.space, s.case_name, s.type);
    if (groups.count(key) == 0) {
      order.push_back(key);
    }
    groups[key].push_back(&s);
    by_type[s.type].push_back(&s);
  }
  for (const auto & key : order) {
    report.rows.push_back(
      make_row(std::get<0>(key), std::get<1>(key), std::get<2>(key), groups.at(key), report.weights));
  }
  for (const auto & [type, scores] : by_type) {
    report.overall.push_back(
      make_row("overall", type == DialogueType::A ? "T_A" : "T_B", type, scores, report.weights));
  }
  return report;
}

}  // namespace groundnav::metrics
