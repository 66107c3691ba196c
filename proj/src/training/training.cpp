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

#include "snapdial/training/training.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include "snapdial/error.hpp"

namespace snapdial {

namespace {

constexpr int kCheckpointVersion = 1;

std::string clip_name(ClipMode mode) {
  switch (mode) {
    case ClipMode::kGlobalNorm: return "norm";
    case ClipMode::kElement: return "element";
    case ClipMode::kNone: return "none";
  }
  return "norm";
}

ClipMode clip_from_string(const std::string& text) {
  if (text == "norm") return ClipMode::kGlobalNorm;
  if (text == "element") return ClipMode::kElement;
  if (text == "none") return ClipMode::kNone;
  throw ConfigError("clip mode must be norm, element or none, got '" + text + "'");
}

}  // namespace

Json TrainConfig::to_json() const {
  Json j = model.to_json();
  j["learningRate"] = sgd.learning_rate;
  j["l2"] = sgd.l2;
  j["clip"] = sgd.clip;
  j["clipMode"] = clip_name(sgd.clip_mode);
  j["patience"] = patience;
  j["maxEpochs"] = max_epochs;
  j["seed"] = seed;
  return j;
}

TrainConfig TrainConfig::from_json(const Json& json) {
  TrainConfig c;
  c.model = ModelConfig::from_json(json);
  try {
    c.sgd.learning_rate = json.value("learningRate", c.sgd.learning_rate);
    c.sgd.l2 = json.value("l2", c.sgd.l2);
    c.sgd.clip = json.value("clip", c.sgd.clip);
    c.sgd.clip_mode = clip_from_string(json.value("clipMode", std::string("norm")));
    c.patience = json.value("patience", c.patience);
    c.max_epochs = json.value("maxEpochs", c.max_epochs);
    c.seed = json.value("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad training config: ") + e.what());
  }
  if (c.max_epochs < 1) throw ConfigError("maxEpochs must be at least 1");
  if (c.patience < 1) throw ConfigError("patience must be at least 1");
  if (!(c.sgd.learning_rate > 0.0)) throw ConfigError("learningRate must be positive");
  return c;
}

std::string TrainConfig::hash() const {
  Json j = to_json();
  j.erase("seed");
  return hex64(fnv1a(j.dump()));
}

PreparedDialogue prepare_dialogue(const Dialogue& dialogue, const Pipeline& env,
                                  const ModelConfig& config, const IndicatorSpec& spec) {
  PreparedDialogue out;
  out.id = dialogue.id;
  const auto beliefs = env.tracker->track(dialogue);
  std::vector<TurnTargets> targets;
  if (config.snapshot) targets = label_snapshots(dialogue, spec, config.attention);
  Rng rng(mix_seed(fnv1a(dialogue.id), 0xdb));
  const Entity* pointer = nullptr;
  const auto slots = env.ontology->tracker_slots();
  for (std::size_t t = 0; t < dialogue.turns.size(); ++t) {
    const Turn& turn = dialogue.turns[t];
    DbResult db = db_query(beliefs[t], *env.ontology, *env.database, rng, pointer);
    pointer = db.pointer;
    TurnExample ex;
    ex.user = env.vocab->encode(turn.user);
    ex.sys = env.vocab->encode(turn.sys);
    ex.x = db.x;
    for (const auto& slot : slots) {
      ex.beliefs.push_back(belief_vector(beliefs[t], *env.ontology, slot, config.belief));
    }
    if (config.snapshot) ex.snapshot = std::move(targets[t]);
    out.turns.push_back(std::move(ex));
    out.db.push_back(std::move(db));
  }
  return out;
}

std::vector<PreparedDialogue> prepare_dialogues(const std::vector<Dialogue>& dialogues,
                                                const Pipeline& env, const ModelConfig& config,
                                                const IndicatorSpec& spec) {
  std::vector<PreparedDialogue> out;
  out.reserve(dialogues.size());
  for (const auto& d : dialogues) out.push_back(prepare_dialogue(d, env, config, spec));
  return out;
}

std::string TrainHistory::csv() const {
  std::string out = "epoch,trainLoss,tokenLoss,snapshotLoss,validLL\n";
  char line[256];
  for (const auto& e : epochs) {
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%.17g\n", e.epoch, e.train_loss,
                  e.token_loss, e.snapshot_loss, e.valid_ll);
    out += line;
  }
  return out;
}

double log_likelihood(Model& model, const std::vector<PreparedDialogue>& data) {
  double ll = 0.0;
  for (const auto& d : data) {
    for (const auto& t : d.turns) ll -= model.turn_loss(t, false).token;
  }
  return ll;
}

Model new_model(const TrainConfig& config, const Vocabulary& vocab, const Ontology& ontology,
                const IndicatorSpec& spec) {
  Model model(config.model, vocab.size(), slot_specs(ontology, config.model.belief), spec,
              Vocabulary::kBos);
  Rng rng(mix_seed(config.seed, 0x1417));
  model.initialize(rng);
  return model;
}

Model train(const TrainConfig& config, const Pipeline& env,
            const std::vector<PreparedDialogue>& train_data,
            const std::vector<PreparedDialogue>& valid_data, TrainHistory* history,
            const std::function<void(const EpochRecord&)>& on_epoch) {
  if (train_data.empty()) throw ConfigError("training split is empty");
  if (valid_data.empty()) throw ConfigError("validation split is empty");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  Model model = new_model(config, *env.vocab, *env.ontology,
                          default_indicator_spec(*env.ontology));
  const auto params = model.parameters();
  Rng order_rng(mix_seed(config.seed, 0x5eed));
  std::vector<std::size_t> order(train_data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  TrainHistory local;
  TrainHistory& hist = history ? *history : local;
  hist = {};
  double best_ll = -std::numeric_limits<double>::infinity();
  std::vector<Tensor> best;
  int since_best = 0;
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const auto epoch_start = Clock::now();
    order_rng.shuffle(order);
    EpochRecord rec;
    rec.epoch = epoch;
    for (std::size_t idx : order) {
      const PreparedDialogue& d = train_data[idx];
      for (const auto& turn : d.turns) {
        const TurnLoss l = model.turn_loss(turn, true);
        if (!std::isfinite(l.total)) {
          throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) +
                              ", dialogue " + d.id);
        }
        rec.train_loss += l.total;
        rec.token_loss += l.token;
        rec.snapshot_loss += l.snapshot;
      }
      try {
        clip_and_step(params, config.sgd);
      } catch (const TrainingError& e) {
        throw TrainingError(std::string(e.what()) + " at epoch " + std::to_string(epoch) +
                            ", dialogue " + d.id);
      }
    }
    rec.valid_ll = log_likelihood(model, valid_data);
    rec.seconds = std::chrono::duration<double>(Clock::now() - epoch_start).count();
    hist.epochs.push_back(rec);
    hist.stop_epoch = epoch;
    if (on_epoch) on_epoch(rec);
    if (rec.valid_ll > best_ll) {
      best_ll = rec.valid_ll;
      hist.best_epoch = epoch;
      best.clear();
      for (const Parameter* p : params) best.push_back(p->value);
      since_best = 0;
    } else if (++since_best >= config.patience) {
      break;
    }
  }
  for (std::size_t i = 0; i < params.size(); ++i) params[i]->value = std::move(best[i]);
  hist.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return model;
}

Json checkpoint_json(const Model& model, const Vocabulary& vocab) {
  Json j;
  j["version"] = kCheckpointVersion;
  j["vocabHash"] = vocab.hash();
  j["vocab"] = vocab.tokens();
  j["model"] = model.to_json();
  return j;
}

void save_checkpoint(const std::filesystem::path& path, const Model& model,
                     const Vocabulary& vocab) {
  write_json_file(path, checkpoint_json(model, vocab));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    if (j.at("version").get<int>() != kCheckpointVersion) {
      throw FormatError("unsupported checkpoint version in " + path.string());
    }
    Checkpoint c{Model::from_json(j.at("model")),
                 Vocabulary(j.at("vocab").get<std::vector<std::string>>())};
    if (c.vocab.hash() != j.at("vocabHash").get<std::string>()) {
      throw FormatError("vocabulary hash mismatch in " + path.string());
    }
    if (c.vocab.size() != c.model.vocab_size()) {
      throw FormatError("checkpoint vocabulary and model disagree in size");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("bad checkpoint " + path.string() + ": " + e.what());
  }
}

std::vector<GridRow> experiment_grid() {
  auto row = [](std::string block, Variant v, bool att, BeliefRepresentation rep) {
    GridRow r;
    r.block = std::move(block);
    r.model.variant = v;
    r.model.attention = att;
    r.model.belief = rep;
    return r;
  };
  using B = BeliefRepresentation;
  return {row("belief", Variant::kLm, false, B::kFull),
          row("belief", Variant::kLm, false, B::kSummary),
          row("architecture", Variant::kLm, false, B::kSummary),
          row("architecture", Variant::kMem, false, B::kSummary),
          row("architecture", Variant::kHybrid, false, B::kSummary),
          row("attention", Variant::kLm, true, B::kSummary),
          row("attention", Variant::kMem, true, B::kSummary),
          row("attention", Variant::kHybrid, true, B::kSummary)};
}

std::vector<SeedRun> run_seeds(const TrainConfig& config, const Pipeline& env,
                               const std::vector<PreparedDialogue>& train_data,
                               const std::vector<PreparedDialogue>& valid_data,
                               std::uint64_t base_seed, int count, int threads) {
  if (count < 1) throw ConfigError("need at least one seed");
  std::vector<SeedRun> runs(static_cast<std::size_t>(count));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      SeedRun& run = runs[i];
      run.seed = base_seed + i;
      TrainConfig c = config;
      c.seed = run.seed;
      try {
        run.model = train(c, env, train_data, valid_data, &run.history);
      } catch (const std::exception& e) {
        run.error = e.what();
      }
    }
  };
  const int n_threads = std::max(1, std::min(threads, count));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return runs;
}

}  // namespace snapdial
