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

#include <fstream>
#include <numeric>
#include <sstream>

#include "fixture.hpp"
#include "snapdial/analysis/analysis.hpp"
#include "snapdial/error.hpp"

namespace snapdial {
namespace {

using testing::small_world;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Training, LossFallsAndBestEpochIsRestored) {
  const auto& w = small_world();
  TrainConfig tc;
  tc.model = testing::model_config(Variant::kLm, false, true);
  tc.max_epochs = 4;
  const auto spec = default_indicator_spec(w.ws.corpus.ontology);
  const auto tr = prepare_dialogues(w.ws.split.train, w.pipeline(), tc.model, spec);
  const auto va = prepare_dialogues(w.ws.split.valid, w.pipeline(), tc.model, spec);
  TrainHistory h;
  Model m = train(tc, w.pipeline(), tr, va, &h);
  ASSERT_GE(h.epochs.size(), 2u);
  EXPECT_LT(h.epochs.back().train_loss, h.epochs.front().train_loss);
  double best = -1e300;
  for (const auto& e : h.epochs) best = std::max(best, e.valid_ll);
  EXPECT_EQ(h.epochs[h.best_epoch - 1].valid_ll, best);
  EXPECT_NEAR(log_likelihood(m, va), best, 1e-9);
  EXPECT_EQ(h.csv().substr(0, h.csv().find('\n')),
            "epoch,trainLoss,tokenLoss,snapshotLoss,validLL");
}

TEST(Training, ConfigJsonAndHash) {
  TrainConfig a;
  a.model = testing::model_config(Variant::kHybrid, true, true, BeliefRepresentation::kFull);
  a.sgd.learning_rate = 0.25;
  const TrainConfig b = TrainConfig::from_json(a.to_json());
  EXPECT_EQ(b.to_json(), a.to_json());
  EXPECT_EQ(b.hash(), a.hash());
  TrainConfig c = a;
  c.seed = 99;
  EXPECT_EQ(c.hash(), a.hash());
  c.model.snapshot = false;
  EXPECT_NE(c.hash(), a.hash());
  EXPECT_THROW(TrainConfig::from_json(Json{{"variant", "gru"}}), ConfigError);
}

TEST(Training, GridHasEightRowsInThreeBlocks) {
  const auto grid = experiment_grid();
  ASSERT_EQ(grid.size(), 8u);
  std::vector<std::string> labels;
  for (const auto& r : grid) {
    EXPECT_FALSE(r.model.snapshot);
    labels.push_back(r.model.label());
  }
  EXPECT_EQ(labels.front(), "lm/full/nosnap");
  EXPECT_EQ(labels.back(), "hybrid+att/summary/nosnap");
}

TEST(Training, RunsAreBitIdenticalAcrossRepeats) {
  const auto& w = small_world();
  TrainConfig tc;
  tc.model = testing::model_config(Variant::kMem, true, true);
  tc.max_epochs = 2;
  const auto env = w.run_env();
  std::vector<std::string> files;
  for (const char* name : {"a", "b"}) {
    const auto root = testing::temp_dir(std::string("det-") + name);
    const auto runs = train_runs(tc, {3}, env, root);
    ASSERT_EQ(runs.size(), 1u);
    decode_run(runs[0], env);
    eval_run(runs[0], w.ws);
    files.push_back(slurp(runs[0].checkpoint()) + slurp(runs[0].decode()) +
                    slurp(runs[0].metrics()) + slurp(runs[0].history()));
    std::filesystem::remove_all(root);
  }
  EXPECT_EQ(files[0], files[1]);
}

TEST(Training, CheckpointRoundTrip) {
  const auto& w = small_world();
  const Model m = testing::random_model(testing::model_config(Variant::kLm, false, false), 8);
  const auto dir = testing::temp_dir("ckpt");
  save_checkpoint(dir / "c.json", m, w.ws.vocab);
  const Checkpoint c = load_checkpoint(dir / "c.json");
  EXPECT_EQ(c.model.to_json(), m.to_json());
  EXPECT_EQ(c.vocab.hash(), w.ws.vocab.hash());
  std::ofstream(dir / "bad.json") << "{}";
  EXPECT_THROW(load_checkpoint(dir / "bad.json"), FormatError);
  std::filesystem::remove_all(dir);
}

TEST(Analysis, ZeroInitialisedGatesSitAtOneHalf) {
  const auto& w = small_world();
  for (Variant v : {Variant::kLm, Variant::kMem, Variant::kHybrid}) {
    const Model m = testing::random_model(testing::model_config(v, false, false), 1, 0.0);
    const auto data = prepare_dialogues({w.ws.split.test[0]}, w.pipeline(), m.config(),
                                        m.indicators());
    const GateStats s = gate_stats(m, data);
    EXPECT_EQ(s.mean_i, 0.5);
    EXPECT_EQ(s.mean_f, 0.5);
    EXPECT_EQ(s.mean_o, 0.5);
    EXPECT_EQ(s.mean_r.has_value(), v != Variant::kLm);
    if (s.r_over_o) EXPECT_EQ(*s.r_over_o, 1.0);
  }
}

TEST(Analysis, GatesCsvLayout) {
  GateStats lm{"lm", 3, 0.5, 0.5, 0.5, {}, {}, {}};
  GateStats hy{"hybrid", 3, 0.25, 0.5, 0.5, 0.25, 0.5, 0.5};
  EXPECT_EQ(gates_csv({lm, hy}),
            "config,meanI,meanF,meanRoverO\nlm,0.5,0.5,\nhybrid,0.25,0.5,0.5\n");
}

TEST(Analysis, HeatMapRowsAndTraces) {
  const auto& w = small_world();
  const Model m = testing::random_model(testing::model_config(Variant::kHybrid, true, true), 6);
  BeamOptions beam;
  beam.max_len = 15;
  const TurnReplay r = replay_turn(m, w.pipeline(), w.ws.split.test[0], 0, beam);
  ASSERT_FALSE(r.tokens.empty());
  const HeatMap hm = attention_heatmap(m, w.ws.corpus.ontology, r);
  EXPECT_EQ(hm.trackers.size(), 9u);
  ASSERT_EQ(hm.rows.size(), r.tokens.size());
  for (const auto& row : hm.rows) {
    EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 1.0, 1e-9);
  }
  const NeuronTrace tr = snapshot_trace(m, r);
  EXPECT_EQ(tr.indicators, m.indicators().ids);
  for (const auto& row : tr.values) {
    for (double v : row) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
  const Model plain = testing::random_model(testing::model_config(Variant::kLm, false, false), 6);
  const TurnReplay p = replay_turn(plain, w.pipeline(), w.ws.split.test[0], 0, beam);
  EXPECT_THROW(attention_heatmap(plain, w.ws.corpus.ontology, p), UnsupportedConfigError);
  EXPECT_THROW(snapshot_trace(plain, p), UnsupportedConfigError);
}

}  // namespace
}  // namespace snapdial
