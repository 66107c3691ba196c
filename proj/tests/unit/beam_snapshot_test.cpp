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

#include "fixture.hpp"
#include "oracles.hpp"
#include "snapdial/error.hpp"
#include "snapdial/numerics/gradcheck.hpp"

namespace snapdial {
namespace {

using testing::small_world;

struct TinyLm {
  Model model;
  Conditioning cond;
};

TinyLm tiny(std::uint64_t seed) {
  ModelConfig c;
  c.hidden = 4;
  c.init_range = 1.5;
  TinyLm t{Model(c, 3, {{"food", 3}}, IndicatorSpec{{"offered"}}, 0), {}};
  Rng rng(seed);
  t.model.initialize(rng);
  t.cond = t.model.condition({1, 1}, match_vector(3), {{0.2, 0.3, 0.5}});
  return t;
}

double brute_score(const Model& m, const Conditioning& cond, const std::vector<int>& seq) {
  CellState s = CellState::zeros(m.config().hidden);
  int input = m.bos_id();
  double sum = 0.0;
  for (int tok : seq) {
    const StepResult r = m.step(cond, input, s);
    sum += r.log_probs[tok];
    s = r.state;
    input = tok;
  }
  return sum / static_cast<double>(seq.size());
}

class BeamOracleTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(BeamOracleTest, WideBeamFindsTheExhaustiveArgmax) {
  const TinyLm t = tiny(GetParam());
  const BeamOptions opt{81, 81, 4, 2};
  double best = -1e300;
  std::vector<int> arg;
  for (const auto& seq : oracle::finished_sequences(3, 2, 4)) {
    const double s = brute_score(t.model, t.cond, seq);
    if (s > best) best = s, arg = seq;
  }
  const auto cands = beam_search(t.model, t.cond, opt);
  ASSERT_FALSE(cands.empty());
  EXPECT_EQ(cands[0].tokens, arg);
  EXPECT_NEAR(cands[0].score, best, 1e-12);
  EXPECT_EQ(cands.size(), oracle::finished_sequences(3, 2, 4).size());
  for (std::size_t i = 1; i < cands.size(); ++i) EXPECT_GE(cands[i - 1].score, cands[i].score);
}

TEST_P(BeamOracleTest, WidthOneIsGreedy) {
  const TinyLm t = tiny(GetParam());
  const BeamOptions opt{1, 1, 4, 2};
  const auto cands = beam_search(t.model, t.cond, opt);
  const Candidate g = greedy_decode(t.model, t.cond, opt);
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(cands[0].tokens, g.tokens);
  EXPECT_EQ(cands[0].truncated, g.truncated);
  EXPECT_NEAR(cands[0].score, g.score, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, BeamOracleTest, ::testing::Range<std::uint64_t>(1, 9));

TEST(Beam, ScoresAgreeWithTeacherForcing) {
  const auto& w = small_world();
  const Model m = testing::random_model(testing::model_config(Variant::kMem, true, false), 2);
  const auto prepared = prepare_dialogue(w.ws.split.test[0], w.pipeline(), m.config(),
                                         m.indicators());
  const auto& t = prepared.turns[0];
  const Conditioning cond = m.condition(t.user, t.x, t.beliefs);
  BeamOptions opt;
  opt.max_len = 12;
  for (const auto& c : beam_search(m, cond, opt)) {
    EXPECT_NEAR(c.score, sequence_score(m, cond, c.tokens), 1e-10);
    EXPECT_NEAR(c.score, brute_score(m, cond, c.tokens), 1e-10);
  }
}

TEST(Snapshot, LabelsEqualASuffixScan) {
  const auto& w = small_world();
  const IndicatorSpec spec = default_indicator_spec(w.ws.corpus.ontology);
  EXPECT_EQ(spec.ids[0], kOfferedIndicator);
  EXPECT_EQ(spec.ids[1], "[v.name]");
  for (const auto& d : w.ws.corpus.dialogues) {
    const auto labels = label_snapshots(d, spec, true);
    ASSERT_EQ(labels.size(), d.turns.size());
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      ASSERT_EQ(labels[t].size(), d.turns[t].sys.size());
      for (std::size_t k = 1; k < spec.size(); ++k) {
        const auto ref = oracle::suffix_labels(d.turns[t].sys, spec.ids[k]);
        for (std::size_t j = 0; j < ref.size(); ++j) EXPECT_EQ(labels[t][j][k], ref[j]);
      }
    }
  }
}

TEST(Snapshot, OfferedNeverSwitchesOff) {
  const auto& w = small_world();
  const IndicatorSpec spec = default_indicator_spec(w.ws.corpus.ontology);
  for (const auto& d : w.ws.corpus.dialogues) {
    double prev = 0.0;
    for (const auto& turn : label_snapshots(d, spec, false)) {
      for (const auto& row : turn) {
        EXPECT_GE(row[0], prev);
        prev = row[0];
      }
    }
  }
}

TEST(Snapshot, WithoutAttentionLabelsAreConstantPerTurn) {
  const auto& w = small_world();
  const IndicatorSpec spec = default_indicator_spec(w.ws.corpus.ontology);
  const auto labels = label_snapshots(w.ws.corpus.dialogues[0], spec, false);
  for (const auto& turn : labels) {
    for (const auto& row : turn) EXPECT_EQ(row, turn.front());
  }
}

TEST(Snapshot, LossGradientAndAlignment) {
  const std::vector<std::vector<double>> a{{0.3, -0.8}, {0.9, 0.1}};
  const TurnTargets y{{1.0, 0.0}, {1.0, 1.0}};
  const auto g = snapshot_loss_grad(a, y);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 2; ++k) {
      auto hi = a, lo = a;
      hi[j][k] += 1e-6;
      lo[j][k] -= 1e-6;
      EXPECT_NEAR(g[j][k], (snapshot_loss(hi, y) - snapshot_loss(lo, y)) / 2e-6, 1e-7);
    }
  }
  const double p = (0.3 + 1) / 2;
  EXPECT_NEAR(snapshot_loss({{0.3}}, {{1.0}}), -std::log(p), 1e-12);
  EXPECT_THROW(snapshot_loss(a, {{1.0, 0.0}}), AlignmentError);
}

}  // namespace
}  // namespace snapdial
