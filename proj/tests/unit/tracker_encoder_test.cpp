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

#include <numeric>

#include "fixture.hpp"
#include "snapdial/error.hpp"

namespace snapdial {
namespace {

using testing::small_world;

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST(Belief, PriorPutsAllMassOnNone) {
  const Ontology o = make_restaurant_ontology();
  const BeliefState p = BeliefState::prior(o);
  for (const auto& slot : o.informable) {
    const auto& d = p.informable.at(slot.name);
    EXPECT_EQ(d.size(), slot.values.size() + 2);
    EXPECT_EQ(d.back(), 1.0);
    EXPECT_EQ(p.top_values(o).at(slot.name), kNotMentioned);
  }
}

TEST(Belief, SummaryKeepsThreeComponents) {
  const auto s = summarize_slot({0.1, 0.2, 0.3, 0.4});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_NEAR(s[0], 0.3, 1e-15);
  EXPECT_NEAR(s[1], 0.3, 1e-15);
  EXPECT_NEAR(s[2], 0.4, 1e-15);
  const Ontology o = make_restaurant_ontology();
  const BeliefState p = BeliefState::prior(o);
  EXPECT_EQ(belief_dim(o, "food", BeliefRepresentation::kSummary), 3u);
  EXPECT_EQ(belief_dim(o, "food", BeliefRepresentation::kFull), o.values("food").size() + 2);
  EXPECT_EQ(belief_dim(o, "phone", BeliefRepresentation::kFull), 1u);
  EXPECT_EQ(belief_vector(p, o, "area", BeliefRepresentation::kSummary),
            (std::vector<double>{0.0, 0.0, 1.0}));
}

TEST(Tracker, TrackedDistributionsAreNormalised) {
  const auto& w = small_world();
  for (const auto& d : w.ws.split.test) {
    for (const auto& b : w.tracker->track(d)) {
      for (const auto& [slot, dist] : b.informable) EXPECT_NEAR(sum(dist), 1.0, 1e-12);
      for (const auto& [slot, p] : b.requestable) {
        EXPECT_GT(p, 0.0);
        EXPECT_LT(p, 1.0);
      }
    }
  }
}

TEST(Tracker, AccurateOnHeldOutDialogues) {
  const auto& w = small_world();
  for (const auto& [slot, acc] : tracker_accuracy(*w.tracker, w.ws.split.test)) {
    EXPECT_GE(acc, 0.9) << slot;
  }
}

TEST(Tracker, UnderstandsAPlainRequest) {
  const auto& w = small_world();
  const Ontology& o = w.ws.corpus.ontology;
  const std::string food = o.values("food")[0];
  const BeliefState b = w.tracker->track_prefix({tokenize("i want " + food + " food")});
  EXPECT_EQ(b.top_values(o).at("food"), food);
  EXPECT_EQ(b.top_values(o).at("area"), kNotMentioned);
}

TEST(Tracker, JsonRoundTripPreservesOutputs) {
  const auto& w = small_world();
  const TrackerModel back = TrackerModel::from_json(w.tracker->to_json(), w.ws.database);
  EXPECT_EQ(back.parameter_hash(), w.tracker->parameter_hash());
  const auto& d = w.ws.split.test[0];
  EXPECT_EQ(back.track(d).back().informable, w.tracker->track(d).back().informable);
}

TEST(Database, MatchBinsSaturateAtFive) {
  EXPECT_EQ(match_bin(0), 0u);
  EXPECT_EQ(match_bin(4), 4u);
  EXPECT_EQ(match_bin(5), 5u);
  EXPECT_EQ(match_bin(80), 5u);
  const MatchVector x = match_vector(2);
  EXPECT_EQ(std::accumulate(x.begin(), x.end(), 0.0), 1.0);
  EXPECT_EQ(x[2], 1.0);
}

TEST(Database, PointerStaysWhileItStillMatches) {
  const auto& w = small_world();
  const Ontology& o = w.ws.corpus.ontology;
  const Entity& e = w.ws.database.entities[0];
  BeliefState b = BeliefState::prior(o);
  auto& food = b.informable.at("food");
  std::fill(food.begin(), food.end(), 0.0);
  food[*o.value_index("food", e.value("food"))] = 1.0;
  Rng rng(1);
  const DbResult first = db_query(b, o, w.ws.database, rng, &e);
  EXPECT_EQ(first.pointer, &e);
  EXPECT_EQ(first.bin, match_bin(first.matches.size()));
  Rng rng2(1);
  const DbResult fresh = db_query(b, o, w.ws.database, rng2, nullptr);
  ASSERT_NE(fresh.pointer, nullptr);
  EXPECT_EQ(fresh.pointer->value("food"), e.value("food"));
}

TEST(Attention, WeightsFormADistribution) {
  const auto& w = small_world();
  const Model m = testing::random_model(
      testing::model_config(Variant::kHybrid, true, false), 5, 0.5);
  const auto prepared = prepare_dialogue(w.ws.split.test[0], w.pipeline(), m.config(),
                                         m.indicators());
  for (const auto& t : prepared.turns) {
    for (const auto& s : m.forward_teacher(t)) {
      ASSERT_EQ(s.alpha.size(), 9u);
      EXPECT_NEAR(sum(s.alpha), 1.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace snapdial
