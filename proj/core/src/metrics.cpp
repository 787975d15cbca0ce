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

#include "groundnav/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace groundnav::metrics
{

namespace
{

bool in_unit(double v) {return v >= 0.0 && v <= 1.0;}

std::string fixed3(double v)
{
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << v;
  return out.str();
}

const char * type_name(DialogueType t) {return t == DialogueType::A ? "A" : "B";}

}  // namespace

void Weights::validate() const
{
  for (double w : {sr, as, ar, ns}) {
    if (!std::isfinite(w) || !in_unit(w)) {
      throw ConfigError("weights must lie in [0,1]");
    }
  }
  if (std::abs(sr + as - 1.0) > 1e-9) {
    throw ConfigError("type-A weights must sum to 1");
  }
  if (std::abs(ar + ns - 1.0) > 1e-9) {
    throw ConfigError("type-B weights must sum to 1");
  }
}

Weights Weights::parse(const std::string & text)
{
  std::vector<double> values;
  std::stringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(field, &used));
      if (field.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument(field);
      }
    } catch (const std::exception &) {
      throw ConfigError("bad weight '" + field + "' in '" + text + "'");
    }
  }
  if (values.size() != 4) {
    throw ConfigError("weights need four comma-separated values: sr,as,ar,ns");
  }
  Weights w{values[0], values[1], values[2], values[3]};
  w.validate();
  return w;
}

double success_rate(int alpha, int k)
{
  if (k < 1) {
    throw ConfigError("success rate needs k >= 1");
  }
  if (alpha < 1 || alpha > k + 1) {
    throw ConfigError("alpha must lie in 1..k+1");
  }
  return static_cast<double>(k - (alpha - 1)) / static_cast<double>(k);
}

double success_rate(const GroundingTrace & trace)
{
  return success_rate(trace.alpha, trace.k);
}

double accuracy_score(const GroundingTrace & trace, const std::string & target_id)
{
  if (trace.alpha < 1 || trace.alpha > trace.k) {
    return 0.0;
  }
  double sum = 0.0;
  for (int i = 0; i < trace.alpha && i < static_cast<int>(trace.per_step_predictions.size()); ++i) {
    const auto & pred = trace.per_step_predictions[static_cast<std::size_t>(i)];
    if (!pred.empty() && pred.count(target_id) != 0) {
      sum += 1.0 / static_cast<double>(pred.size());
    }
  }
  return sum / trace.alpha;
}

double accuracy_rate(const GroundingTrace & trace, const std::string & target_id)
{
  return trace.resolved_id && *trace.resolved_id == target_id ? 1.0 : 0.0;
}

double jaccard(const grounding::IdSet & truth, const grounding::IdSet & predicted)
{
  if (truth.empty() && predicted.empty()) {
    return 1.0;
  }
  std::size_t inter = 0;
  for (const auto & id : predicted) {
    inter += truth.count(id);
  }
  const std::size_t uni = truth.size() + predicted.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double narrowing_score(const GroundingTrace & trace, const DialogueItem & item)
{
  if (trace.alpha < 1) {
    return 0.0;
  }
  const int steps = std::min(trace.alpha, trace.k);
  double sum = 0.0;
  for (int i = 0; i < steps; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const grounding::IdSet truth = idx < item.step_candidates.size() ? item.step_candidates[idx] : grounding::IdSet{};
    const grounding::IdSet pred = idx < trace.per_step_predictions.size() ? trace.per_step_predictions[idx] : grounding::IdSet{};
    sum += jaccard(truth, pred);
  }
  return sum / trace.alpha;
}

double aggregate(const std::vector<std::pair<double, double>> & scores, double w1, double w2)
{
  if (scores.empty()) {
    throw DataError("cannot aggregate an empty item set");
  }
  double sum = 0.0;
  for (const auto & [a, b] : scores) {
    sum += w1 * a + w2 * b;
  }
  return sum / static_cast<double>(scores.size());
}

double aggregate(
  const std::vector<std::pair<double, double>> & scores, const Weights & weights, DialogueType type)
{
  weights.validate();
  return type == DialogueType::A ? aggregate(scores, weights.sr, weights.as) :
         aggregate(scores, weights.ar, weights.ns);
}

std::size_t MetricsReport::aborted() const
{
  return static_cast<std::size_t>(
    std::count_if(items.begin(), items.end(), [](const ItemScore & s) {return s.aborted;}));
}

bool MetricsReport::totals_consistent(double tol) const
{
  const auto ok = [&](const ReportRow & r) {
      const double expected = r.type == DialogueType::A ?
        weights.sr * r.first + weights.as * r.second :
        weights.ar * r.first + weights.ns * r.second;
      return std::abs(expected - r.total) <= tol;
    };
  return std::all_of(rows.begin(), rows.end(), ok) && std::all_of(overall.begin(), overall.end(), ok);
}

std::string to_table(const MetricsReport & report, char delimiter)
{
  std::ostringstream out;
  out << "space" << delimiter << "case" << delimiter << "SR_or_AR" << delimiter << "AS_or_NS" << delimiter << "T\n";
  const auto emit = [&](const ReportRow & r) {
      out << r.space << delimiter << r.case_name << delimiter << fixed3(r.first) << delimiter
          << fixed3(r.second) << delimiter << fixed3(r.total) << '\n';
    };
  for (const auto & r : report.rows) {
    emit(r);
  }
  for (const auto & r : report.overall) {
    emit(r);
  }
  return out.str();
}

std::string to_json(const MetricsReport & report)
{
  using nlohmann::ordered_json;
  const auto row_json = [](const ReportRow & r) {
      ordered_json j;
      j["space"] = r.space;
      j["case"] = r.case_name;
      j["type"] = type_name(r.type);
      j["items"] = r.items;
      j[r.type == DialogueType::A ? "SR" : "AR"] = r.first;
      j[r.type == DialogueType::A ? "AS" : "NS"] = r.second;
      j["T"] = r.total;
      return j;
    };
  ordered_json doc;
  doc["weights"] = {{"sr", report.weights.sr}, {"as", report.weights.as},
    {"ar", report.weights.ar}, {"ns", report.weights.ns}};
  doc["rows"] = ordered_json::array();
  for (const auto & r : report.rows) {
    doc["rows"].push_back(row_json(r));
  }
  doc["overall"] = ordered_json::array();
  for (const auto & r : report.overall) {
    doc["overall"].push_back(row_json(r));
  }
  doc["items"] = ordered_json::array();
  for (const auto & s : report.items) {
    ordered_json j;
    j["id"] = s.item_id;
    j["space"] = s.space;
    j["case"] = s.case_name;
    j["type"] = type_name(s.type);
    j["k"] = s.k;
    j["alpha"] = s.alpha;
    j[s.type == DialogueType::A ? "SR" : "AR"] = s.first;
    j[s.type == DialogueType::A ? "AS" : "NS"] = s.second;
    j["resolved_id"] = s.resolved_id ? ordered_json(*s.resolved_id) : ordered_json(nullptr);
    j["narrows"] = s.narrows;
    j["aborted"] = s.aborted;
    if (!s.diagnostics.empty()) {
      j["diagnostics"] = s.diagnostics;
    }
    ordered_json steps = ordered_json::array();
    for (const auto & p : s.trace.per_step_predictions) {
      std::vector<std::string> ids(p.begin(), p.end());
      std::sort(ids.begin(), ids.end(), grounding::id_less);
      steps.push_back(ids);
    }
    j["predictions"] = std::move(steps);
    doc["items"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::string to_text(const MetricsReport & report)
{
  std::size_t space_w = 5;
  std::size_t case_w = 4;
  for (const auto * rows : {&report.rows, &report.overall}) {
    for (const auto & r : *rows) {
      space_w = std::max(space_w, r.space.size());
      case_w = std::max(case_w, r.case_name.size());
    }
  }
  std::ostringstream out;
  out << "weights: sr=" << report.weights.sr << " as=" << report.weights.as
      << " ar=" << report.weights.ar << " ns=" << report.weights.ns << '\n';
  const auto line = [&](const std::string & a, const std::string & b, const std::string & t,
    const std::string & c, const std::string & d, const std::string & e) {
      out << std::left << std::setw(static_cast<int>(space_w)) << a << "  "
          << std::setw(static_cast<int>(case_w)) << b << "  " << std::setw(4) << t << "  "
          << std::right << std::setw(8) << c << "  " << std::setw(8) << d << "  "
          << std::setw(6) << e << '\n';
    };
  line("space", "case", "type", "SR/AR", "AS/NS", "T");
  for (const auto * rows : {&report.rows, &report.overall}) {
    for (const auto & r : *rows) {
      line(r.space, r.case_name, type_name(r.type), fixed3(r.first), fixed3(r.second), fixed3(r.total));
    }
  }
  out << "items: " << report.items.size() << ", aborted: " << report.aborted() << '\n';
  return out.str();
}

}  // namespace groundnav::metrics
