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

#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "snapdial/corpus/vocab.hpp"
#include "snapdial/model/model.hpp"
#include "snapdial/numerics/optim.hpp"
#include "snapdial/tracker/tracker.hpp"

namespace snapdial {

struct TrainConfig {
  ModelConfig model;
  SgdOptions sgd{0.5, 1e-5, 1.0, ClipMode::kGlobalNorm};
  int patience = 3;
  int max_epochs = 15;
  std::uint64_t seed = 1;

  Json to_json() const;
  // Missing keys keep their defaults.
  static TrainConfig from_json(const Json& json);
  // Hash of everything except the seed; names the run directory.
  std::string hash() const;
};

// A dialogue turned into model inputs. Beliefs come from the (frozen)
// trackers and the match vector from querying the database with them.
struct PreparedDialogue {
  std::string id;
  std::vector<TurnExample> turns;
  std::vector<DbResult> db;  // per turn, with the pointer chain
};

// Shared environment for preparing data and running the pipeline.
struct Pipeline {
  const Ontology* ontology = nullptr;
  const Database* database = nullptr;
  const TrackerModel* tracker = nullptr;
  const Vocabulary* vocab = nullptr;
};

PreparedDialogue prepare_dialogue(const Dialogue& dialogue, const Pipeline& env,
                                  const ModelConfig& config, const IndicatorSpec& spec);
std::vector<PreparedDialogue> prepare_dialogues(const std::vector<Dialogue>& dialogues,
                                                const Pipeline& env, const ModelConfig& config,
                                                const IndicatorSpec& spec);

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double token_loss = 0.0;
  double snapshot_loss = 0.0;
  double valid_ll = 0.0;
  double seconds = 0.0;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;
  int stop_epoch = 0;
  double wall_seconds = 0.0;

  // epoch,trainLoss,tokenLoss,snapshotLoss,validLL
  std::string csv() const;
};

// Sum of gold-token log-probabilities (no snapshot term).
double log_likelihood(Model& model, const std::vector<PreparedDialogue>& data);

Model new_model(const TrainConfig& config, const Vocabulary& vocab, const Ontology& ontology,
                const IndicatorSpec& spec);

// Per-dialogue SGD with early stopping on validation log-likelihood;
// returns the parameters of the best epoch. Throws TrainingError (with
// epoch and dialogue) on a non-finite loss.
Model train(const TrainConfig& config, const Pipeline& env,
            const std::vector<PreparedDialogue>& train_data,
            const std::vector<PreparedDialogue>& valid_data, TrainHistory* history = nullptr,
            const std::function<void(const EpochRecord&)>& on_epoch = {});

// Checkpoint = model JSON plus the vocabulary it was trained with.
struct Checkpoint {
  Model model;
  Vocabulary vocab;
};

Json checkpoint_json(const Model& model, const Vocabulary& vocab);
void save_checkpoint(const std::filesystem::path& path, const Model& model,
                     const Vocabulary& vocab);
Checkpoint load_checkpoint(const std::filesystem::path& path);

struct SeedRun {
  std::uint64_t seed = 0;
  std::optional<Model> model;
  TrainHistory history;
  std::string error;  // non-empty when the run failed
};

// Seeds base..base+count-1, trained independently on up to `threads`
// threads. Failures are recorded per seed.
// Rows of the results table: belief representation (lm full / summary),
// conditional architecture (lm / mem / hybrid, summary) and the same three
// with attention. lm/summary appears in the first two blocks.
struct GridRow {
  std::string block;
  ModelConfig model;  // snapshot off; each row is run with and without
};

std::vector<GridRow> experiment_grid();

std::vector<SeedRun> run_seeds(const TrainConfig& config, const Pipeline& env,
                               const std::vector<PreparedDialogue>& train_data,
                               const std::vector<PreparedDialogue>& valid_data,
                               std::uint64_t base_seed, int count, int threads = 1);

}  // namespace snapdial
