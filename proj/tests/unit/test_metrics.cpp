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

#include <gtest/gtest.h>

#include <random>

#include "json.hpp"

#include "groundnav/dataset.hpp"
#include "groundnav/errors.hpp"
#include "groundnav/metrics.hpp"
#include "test_support.hpp"

namespace groundnav::metrics
{
namespace
{

using grounding::IdSet;

GroundingTrace trace_of(int k, int alpha, std::vector<IdSet> steps, std::optional<std::string> resolved = {})
{
  GroundingTrace t;
  t.k = k;
  t.alpha = alpha;
  t.per_step_predictions = std::move(steps);
  t.resolved_id = std::move(resolved);
  return t;
}

TEST(SuccessRate, HandValues)
{
  EXPECT_DOUBLE_EQ(success_rate(1, 5), 1.0);
  EXPECT_DOUBLE_EQ(success_rate(4, 5), 0.4);
  EXPECT_DOUBLE_EQ(success_rate(4, 3), 0.0);
  EXPECT_DOUBLE_EQ(success_rate(6, 5), 0.0);
  EXPECT_THROW(success_rate(1, 0), ConfigError);
  EXPECT_THROW(success_rate(0, 3), ConfigError);
  EXPECT_THROW(success_rate(5, 3), ConfigError);
  for (int k = 1; k <= 6; ++k) {
    for (int a = 1; a <= k; ++a) {
      EXPECT_LE(success_rate(a + 1, k), success_rate(a, k));
    }
  }
}

TEST(AccuracyScore, HandValues)
{
  EXPECT_DOUBLE_EQ(accuracy_score(trace_of(3, 1, {{"t"}}, "t"), "t"), 1.0);
  EXPECT_NEAR(accuracy_score(trace_of(3, 2, {{"t", "a", "b"}, {"t"}}, "t"), "t"), (1.0 / 3.0 + 1.0) / 2.0, 1e-12);
  EXPECT_NEAR(accuracy_score(trace_of(3, 2, {{"t", "a", "b"}, {"t"}}, "t"), "t"), 0.6667, 1e-4);
  EXPECT_DOUBLE_EQ(accuracy_score(trace_of(3, 4, {{"t", "a"}, {"t", "a"}, {"t", "a"}}), "t"), 0.0);
  // A step that misses the target, and a step with nothing predicted, add 0.
  EXPECT_NEAR(accuracy_score(trace_of(4, 3, {{"a", "b"}, {}, {"t"}}, "t"), "t"), 1.0 / 3.0, 1e-12);
}

TEST(AccuracyRate, ResolvedTargetOnly)
{
  EXPECT_DOUBLE_EQ(accuracy_rate(trace_of(2, 1, {{"t"}}, "t"), "t"), 1.0);
  EXPECT_DOUBLE_EQ(accuracy_rate(trace_of(2, 1, {{"x"}}, "x"), "t"), 0.0);
  EXPECT_DOUBLE_EQ(accuracy_rate(trace_of(2, 3, {{"t", "x"}, {"t", "x"}}), "t"), 0.0);
}

TEST(Jaccard, Values)
{
  EXPECT_DOUBLE_EQ(jaccard({"a", "b", "c"}, {"a", "b"}), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(jaccard({"a"}, {"b"}), 0.0);
  EXPECT_DOUBLE_EQ(jaccard({}, {}), 1.0);
  EXPECT_DOUBLE_EQ(jaccard({"a"}, {}), 0.0);
  EXPECT_DOUBLE_EQ(jaccard({"a", "b"}, {"b", "c"}), 1.0 / 3.0);
}

DialogueItem b_item(std::vector<IdSet> steps)
{
  DialogueItem item;
  item.type = DialogueType::B;
  item.step_candidates = std::move(steps);
  item.target_id = *item.step_candidates.back().begin();
  return item;
}

TEST(NarrowingScore, HandValues)
{
  const auto item = b_item({{"a", "b", "c"}, {"a"}});
  EXPECT_DOUBLE_EQ(narrowing_score(trace_of(2, 2, {{"a", "b", "c"}, {"a"}}, "a"), item), 1.0);
  EXPECT_NEAR(narrowing_score(trace_of(2, 2, {{"a", "b"}, {"a"}}, "a"), item), (2.0 / 3.0 + 1.0) / 2.0, 1e-12);
  EXPECT_NEAR(narrowing_score(trace_of(2, 2, {{"a", "b"}, {"a"}}, "a"), item), 0.8333, 1e-4);
  EXPECT_DOUBLE_EQ(narrowing_score(trace_of(1, 2, {{"x"}}), b_item({{"a"}})), 0.0);
  // Failure: k recorded steps divided by k + 1.
  EXPECT_NEAR(narrowing_score(trace_of(2, 3, {{"a", "b", "c"}, {"a", "b"}}), item), (1.0 + 0.5) / 3.0, 1e-12);
}

TEST(Aggregate, TableRowsFollowTheWeightedMean)
{
  const Weights w;
  EXPECT_NEAR(aggregate({{0.636, 0.79}}, w, DialogueType::A), 0.667, 1e-3);
  EXPECT_NEAR(aggregate({{0.866, 0.835}}, w, DialogueType::A), 0.860, 1e-3);
  EXPECT_NEAR(aggregate({{1.0, 0.783}}, w, DialogueType::B), 0.913, 1e-3);
  EXPECT_NEAR(aggregate({{0.8, 0.759}}, w, DialogueType::B), 0.784, 1e-3);
  EXPECT_NEAR(aggregate({{0.4, 0.651}}, w, DialogueType::B), 0.5, 1e-3);
  EXPECT_NEAR(aggregate({{0.6, 0.663}}, w, DialogueType::B), 0.625, 1e-3);
  EXPECT_NEAR(aggregate({{1.0, 0.948}}, w, DialogueType::B), 0.979, 1e-3);
  EXPECT_NEAR(aggregate({{0.6, 0.679}}, w, DialogueType::B), 0.632, 1e-3);
  EXPECT_NEAR(aggregate({{1.0, 1.0}}, w, DialogueType::B), 1.0, 1e-3);
  // 0.6 + 0.4 * 0.972 = 0.9888.
  EXPECT_NEAR(aggregate({{1.0, 0.972}}, w, DialogueType::B), 0.989, 1e-3);
  EXPECT_THROW(aggregate({}, 0.5, 0.5), DataError);
}

TEST(Aggregate, LinearInComponentMeans)
{
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<double, double>> scores(1 + rng() % 20);
    double m1 = 0.0;
    double m2 = 0.0;
    for (auto & [a, b] : scores) {
      a = u(rng);
      b = u(rng);
      m1 += a;
      m2 += b;
    }
    m1 /= static_cast<double>(scores.size());
    m2 /= static_cast<double>(scores.size());
    const double w1 = u(rng);
    EXPECT_NEAR(aggregate(scores, w1, 1.0 - w1), w1 * m1 + (1.0 - w1) * m2, 1e-12);
  }
}

TEST(Weights, ParseAndValidate)
{
  const Weights w = Weights::parse("0.7,0.3,0.5,0.5");
  EXPECT_DOUBLE_EQ(w.sr, 0.7);
  EXPECT_DOUBLE_EQ(w.as, 0.3);
  EXPECT_DOUBLE_EQ(w.ar, 0.5);
  EXPECT_DOUBLE_EQ(w.ns, 0.5);
  EXPECT_NO_THROW(Weights{}.validate());
  EXPECT_THROW(Weights::parse("0.7,0.2,0.5,0.5"), ConfigError);
  EXPECT_THROW(Weights::parse("1.2,-0.2,0.5,0.5"), ConfigError);
  EXPECT_THROW(Weights::parse("0.8,0.2,0.6"), ConfigError);
  EXPECT_THROW(Weights::parse("a,b,c,d"), ConfigError);
}

const grounding::Dataset & dataset()
{
  static const grounding::Dataset ds = grounding::load_dataset(groundnav::testing::data_path("visdia.json"));
  return ds;
}

GrounderFactory scripted()
{
  return [](const DialogueItem &) {return std::make_unique<grounding::ScriptedGrounder>();};
}

TEST(EvaluateDataset, ScriptedOracleScoresTypeBPerfectly)
{
  const MetricsReport r = evaluate_dataset(dataset(), scripted());
  ASSERT_EQ(r.items.size(), dataset().items.size());
  for (const auto & s : r.items) {
    EXPECT_GE(s.first, 0.0);
    EXPECT_LE(s.first, 1.0);
    EXPECT_GE(s.second, 0.0);
    EXPECT_LE(s.second, 1.0);
    EXPECT_TRUE(s.narrows) << s.item_id;
    EXPECT_FALSE(s.aborted);
    if (s.type == DialogueType::B) {
      EXPECT_DOUBLE_EQ(s.first, 1.0) << s.item_id;
      EXPECT_DOUBLE_EQ(s.second, 1.0) << s.item_id;
    }
    const auto & item = *std::find_if(dataset().items.begin(), dataset().items.end(),
        [&](const DialogueItem & i) {return i.id == s.item_id;});
    EXPECT_EQ(s.resolved_id, std::optional<std::string>(item.target_id)) << s.item_id;
  }
  ASSERT_EQ(r.overall.size(), 2u);
  EXPECT_EQ(r.overall[1].case_name, "T_B");
  EXPECT_DOUBLE_EQ(r.overall[1].total, 1.0);
  EXPECT_TRUE(r.totals_consistent());
  EXPECT_EQ(r.aborted(), 0u);
}

TEST(EvaluateDataset, RowsGroupedInDatasetOrder)
{
  const MetricsReport r = evaluate_dataset(dataset(), scripted());
  std::vector<std::string> expected;
  for (const auto & item : dataset().items) {
    if (std::find(expected.begin(), expected.end(), item.case_name) == expected.end()) {
      expected.push_back(item.case_name);
    }
  }
  std::vector<std::string> got;
  std::size_t count = 0;
  for (const auto & row : r.rows) {
    got.push_back(row.case_name);
    count += row.items;
  }
  EXPECT_EQ(got, expected);
  EXPECT_EQ(count, dataset().items.size());

  // Type-A item scores follow the trace formulas.
  for (const auto & s : r.items) {
    if (s.type == DialogueType::A) {
      EXPECT_DOUBLE_EQ(s.first, success_rate(s.alpha, s.k));
    }
  }
}

TEST(EvaluateDataset, PerturbedGrounderLowersNarrowing)
{
  const MetricsReport r = evaluate_dataset(dataset(), [](const DialogueItem & item) {
        return std::make_unique<grounding::PerturbedGrounder>(std::hash<std::string>{}(item.id) ^ 7u);
      });
  bool lower = false;
  for (const auto & s : r.items) {
    lower = lower || (s.type == DialogueType::B && s.second < 1.0);
  }
  EXPECT_TRUE(lower);
  EXPECT_TRUE(r.totals_consistent());
}

TEST(EvaluateDataset, WorkersDoNotChangeResults)
{
  EvaluationOptions one;
  EvaluationOptions four;
  four.workers = 4;
  const auto a = evaluate_dataset(dataset(), scripted(), one);
  const auto b = evaluate_dataset(dataset(), scripted(), four);
  EXPECT_EQ(to_table(a), to_table(b));
  EXPECT_EQ(to_json(a), to_json(b));
  EvaluationOptions none;
  none.workers = 0;
  EXPECT_THROW(evaluate_dataset(dataset(), scripted(), none), ConfigError);
  EXPECT_THROW(evaluate_dataset(grounding::Dataset{}, scripted()), DataError);
}

class BrokenGrounder : public grounding::Grounder
{
public:
  explicit BrokenGrounder(bool transport) : transport_(transport) {}
  void begin(const grounding::GroundingContext &) override {}
  grounding::GrounderResponse step(const grounding::DialogueTurn &) override
  {
    if (transport_) {
      throw TransportError("link down");
    }
    throw GroundingError("too many exchanges");
  }

private:
  bool transport_;
};

TEST(EvaluateDataset, FailuresScoreZeroWithDiagnostics)
{
  grounding::Dataset ds = dataset();
  ds.items.resize(3);
  const auto aborted = evaluate_dataset(ds, [](const DialogueItem &) {
        return std::make_unique<BrokenGrounder>(true);
      });
  EXPECT_EQ(aborted.aborted(), 3u);
  for (const auto & s : aborted.items) {
    EXPECT_EQ(s.alpha, s.k + 1);
    EXPECT_DOUBLE_EQ(s.first, 0.0);
    EXPECT_DOUBLE_EQ(s.second, 0.0);
    EXPECT_NE(s.diagnostics.find("link down"), std::string::npos);
  }
  const auto failed = evaluate_dataset(ds, [](const DialogueItem &) {
        return std::make_unique<BrokenGrounder>(false);
      });
  EXPECT_EQ(failed.aborted(), 0u);
  for (const auto & s : failed.items) {
    EXPECT_EQ(s.alpha, s.k + 1);
    EXPECT_NE(s.diagnostics.find("too many"), std::string::npos);
  }
}

TEST(EvaluateDataset, UnknownSceneNamesTheItem)
{
  grounding::Dataset ds = dataset();
  ds.items.resize(1);
  ds.items[0].scene_ref = "scenes/missing.json";
  try {
    evaluate_dataset(ds, scripted());
    FAIL() << "expected DataError";
  } catch (const DataError & e) {
    EXPECT_NE(std::string(e.what()).find(ds.items[0].id), std::string::npos) << e.what();
  }
}

MetricsReport hand_report()
{
  MetricsReport r;
  r.rows.push_back({"Meeting room I", "Meeting room I", DialogueType::A, 2, 0.6364, 0.79, 0.66712});
  r.rows.push_back({"Cafeteria", "Cafeteria-3", DialogueType::B, 1, 1.0, 0.972, 0.9888});
  r.overall.push_back({"overall", "T_A", DialogueType::A, 2, 0.6364, 0.79, 0.66712});
  r.overall.push_back({"overall", "T_B", DialogueType::B, 1, 1.0, 0.972, 0.9888});
  return r;
}

TEST(Report, TableFormat)
{
  EXPECT_EQ(to_table(hand_report()),
    "space,case,SR_or_AR,AS_or_NS,T\n"
    "Meeting room I,Meeting room I,0.636,0.790,0.667\n"
    "Cafeteria,Cafeteria-3,1.000,0.972,0.989\n"
    "overall,T_A,0.636,0.790,0.667\n"
    "overall,T_B,1.000,0.972,0.989\n");
  EXPECT_NE(to_table(hand_report(), '\t').find("space\tcase\t"), std::string::npos);
}

TEST(Report, TotalsConsistency)
{
  MetricsReport r = hand_report();
  EXPECT_TRUE(r.totals_consistent(1e-9));
  r.rows[0].total = 0.7;
  EXPECT_FALSE(r.totals_consistent(1e-9));
}

TEST(Report, JsonAndText)
{
  const auto r = evaluate_dataset(dataset(), scripted());
  const auto doc = nlohmann::json::parse(to_json(r));
  EXPECT_DOUBLE_EQ(doc.at("weights").at("sr").get<double>(), 0.8);
  EXPECT_EQ(doc.at("rows").size(), r.rows.size());
  EXPECT_EQ(doc.at("items").size(), dataset().items.size());
  EXPECT_TRUE(doc.at("rows")[0].contains("SR"));
  EXPECT_TRUE(doc.at("overall")[1].contains("NS"));
  const std::string text = to_text(r);
  EXPECT_NE(text.find("T_B"), std::string::npos);
  EXPECT_NE(text.find("items: 25, aborted: 0"), std::string::npos);
}

}  // namespace
}  // namespace groundnav::metrics
