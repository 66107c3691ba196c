// Copyright 2026 The snapdial Authors. All Rights Reserved.
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

#include <cmath>

#include "bleu_cases.hpp"
#include "fixture.hpp"
#include "oracles.hpp"
#include "snapdial/error.hpp"

namespace snapdial {
namespace {

TEST(Bleu, HandComputedCases) {
  for (const auto& c : testing::kBleuCases) {
    EXPECT_NEAR(sentence_bleu(tokenize(c.candidate), tokenize(c.reference), c.max_n), c.expected,
                1e-9)
        << c.candidate << " | " << c.reference;
  }
}

TEST(Bleu, CorpusPoolsCountsBeforeSmoothing) {
  const std::vector<Tokens> cands{{"a", "b"}, {"a"}}, refs{{"a", "b"}, {"b", "c"}};
  EXPECT_NEAR(corpus_bleu(cands, refs), std::pow(2.0 / 3.0, 0.25) * std::exp(-1.0 / 3.0), 1e-9);
  EXPECT_THROW(corpus_bleu(cands, {refs[0]}), DimensionError);
}

TEST(Bleu, TopOneAndTopFive) {
  const Tokens ref{"a", "b", "c", "d"};
  const std::vector<Tokens> ranked{{"x"}, {"a", "b", "c", "d"}, {"a", "b"}, {"q"}, {"r"},
                                   {"a", "b", "c", "d"}};
  const TurnBleu best = turn_bleu(ranked, ref);
  EXPECT_EQ(best.t1, 0.0);
  EXPECT_NEAR(best.t5, 1.0, 1e-12);
  const TurnBleu mean = turn_bleu(ranked, ref, true);
  EXPECT_NEAR(mean.t5, (1.0 + std::exp(-1.0)) / 5.0, 1e-12);
}

TEST(SlotMatch, TypeLevelAndCandidateRelative) {
  EXPECT_EQ(slot_match({"hello", "there"}, {"[v.name]", "is"}), std::nullopt);
  EXPECT_EQ(slot_match({"[v.name]", "[v.name]", "[v.food]"}, {"[v.name]"}), 0.5);
  EXPECT_EQ(slot_match({"[v.area]", "[s.food]"}, {"[s.food]", "[v.area]", "x"}), 1.0);
}

std::vector<std::pair<std::string, std::string>> constraint_pairs(const Goal& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [slot, value] : g.constraints) {
    if (value != "dontcare") out.emplace_back(slot, value);
  }
  return out;
}

std::vector<oracle::Venue> venues(const Database& db) {
  std::vector<oracle::Venue> out;
  for (const auto& e : db.entities) {
    out.push_back({e.name, {e.attributes.begin(), e.attributes.end()}});
  }
  return out;
}

TEST(Metrics, SlotMatchAndSuccessEqualABruteForceRecount) {
  const auto& w = testing::small_world();
  const std::vector<Dialogue> dialogues(w.ws.corpus.dialogues.begin(),
                                        w.ws.corpus.dialogues.begin() + 50);
  const auto dump = testing::synthetic_dump(dialogues, w.ws.database, 3);
  const auto all_venues = venues(w.ws.database);

  double match_sum = 0.0;
  int matched = 0, successes = 0;
  std::size_t k = 0;
  for (const auto& d : dialogues) {
    std::vector<oracle::PredTurn> turns;
    for (const auto& t : d.turns) {
      const auto& rec = dump[k++];
      const double r = oracle::slot_match(rec.chosen, t.sys);
      const auto lib = slot_match(rec.chosen, t.sys);
      EXPECT_EQ(lib.has_value(), r >= 0.0);
      if (r >= 0.0) {
        EXPECT_EQ(*lib, r);
        match_sum += r;
        ++matched;
      }
      turns.push_back({rec.chosen, rec.entity});
    }
    const bool s = oracle::success(constraint_pairs(d.goal), d.goal.requests, turns, all_venues);
    std::vector<PredictedTurn> predicted;
    for (const auto& t : turns) predicted.push_back({t.tokens, t.entity});
    EXPECT_EQ(task_success(d.goal, predicted, w.ws.database), s) << d.id;
    successes += s;
  }
  const Metrics m = compute_metrics(dump, dialogues, w.ws.database);
  EXPECT_EQ(m.dialogues, 50u);
  EXPECT_EQ(m.turns, dump.size());
  EXPECT_NEAR(m.slot_match, 100.0 * match_sum / matched, 1e-9);
  EXPECT_NEAR(m.success, 100.0 * successes / 50.0, 1e-9);
  EXPECT_GT(successes, 0);
  EXPECT_LT(successes, 50);
}

TEST(Metrics, OfferBeforeRequestedTokensIsRequired) {
  const auto& w = testing::small_world();
  const Entity& e = w.ws.database.entities[0];
  Goal g;
  g.constraints = {{"food", e.value("food")}, {"area", "dontcare"}};
  g.requests = {"phone"};
  const std::vector<PredictedTurn> late{{{"[v.phone]"}, ""}, {{"[v.name]"}, e.name}};
  EXPECT_FALSE(task_success(g, late, w.ws.database));
  const std::vector<PredictedTurn> ok{{{"[v.name]"}, e.name}, {{"[v.phone]"}, e.name}};
  EXPECT_TRUE(task_success(g, ok, w.ws.database));
  const std::vector<PredictedTurn> no_pointer{{{"[v.name]", "[v.phone]"}, ""}};
  EXPECT_FALSE(task_success(g, no_pointer, w.ws.database));
}

TEST(Metrics, MissingTurnIsAFormatError) {
  const auto& w = testing::small_world();
  const std::vector<Dialogue> one{w.ws.corpus.dialogues[0]};
  auto dump = testing::synthetic_dump(one, w.ws.database, 1);
  dump.pop_back();
  EXPECT_THROW(compute_metrics(dump, one, w.ws.database), FormatError);
}

TEST(Metrics, JsonlRoundTrip) {
  const auto& w = testing::small_world();
  const std::vector<Dialogue> two(w.ws.corpus.dialogues.begin(),
                                  w.ws.corpus.dialogues.begin() + 2);
  const auto dump = testing::synthetic_dump(two, w.ws.database, 4);
  const std::string text = dump_jsonl(dump);
  EXPECT_EQ(dump_jsonl(parse_jsonl(text)), text);
  EXPECT_THROW(parse_jsonl("{not json"), FormatError);
}

TEST(Aggregate, SampleStandardDeviation) {
  const MetricSummary s = summarize_values({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.std, std::sqrt(5.0 / 3.0), 1e-12);
  EXPECT_EQ(summarize_values({7.0}).std, 0.0);
  Metrics a, b;
  a.success = 60;
  b.success = 80;
  const AggregateMetrics agg = aggregate({a, b});
  EXPECT_EQ(agg.seed_count, 2u);
  EXPECT_DOUBLE_EQ(agg.success.mean, 70.0);
  EXPECT_NEAR(agg.success.std, std::sqrt(200.0), 1e-12);
}

TEST(Report, CsvHeaderAndRows) {
  ReportRow row{"hybrid+att", "summary", true, aggregate({Metrics{}})};
  const std::string csv = report_csv({row});
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "arch,belief,snapshot,success,slotMatch,t5Bleu,t1Bleu,seedCount,"
            "successStd,slotMatchStd,t5BleuStd,t1BleuStd");
  EXPECT_NE(csv.find("hybrid+att,summary,"), std::string::npos);
}

}  // namespace
}  // namespace snapdial
