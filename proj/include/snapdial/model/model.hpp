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

#include <string>
#include <vector>

#include "snapdial/decoder/decoder.hpp"
#include "snapdial/encoder/encoder.hpp"
#include "snapdial/json_io.hpp"
#include "snapdial/numerics/rng.hpp"
#include "snapdial/snapshot/snapshot.hpp"
#include "snapdial/tracker/tracker.hpp"

namespace snapdial {

struct ModelConfig {
  Variant variant = Variant::kLm;
  bool attention = false;
  bool snapshot = false;
  BeliefRepresentation belief = BeliefRepresentation::kSummary;
  std::size_t hidden = 50;
  double lambda = 1.0;
  double init_range = 0.3;

  // e.g. "hybrid+att/summary/snap"
  std::string label() const;
  Json to_json() const;
  static ModelConfig from_json(const Json& json);
};

// One tracker input slot of the policy.
struct SlotSpec {
  std::string name;
  std::size_t dim = 0;
};

std::vector<SlotSpec> slot_specs(const Ontology& ontology, BeliefRepresentation rep);

// Everything one turn needs, prepared outside the model.
struct TurnExample {
  std::vector<int> user;     // delexicalised user turn
  std::vector<int> sys;      // target response, ending in </s>
  MatchVector x{};
  std::vector<Vec> beliefs;  // tracker order, configured representation
  TurnTargets snapshot;      // one row per target token; unused without snapshot
};

struct TurnLoss {
  double token = 0.0;     // summed token cross-entropy
  double snapshot = 0.0;  // unweighted snapshot loss
  double total = 0.0;     // token + lambda * snapshot
};

// Per-step record of a teacher-forced pass.
struct TeacherStep {
  int input = 0;
  int target = 0;
  double log_prob = 0.0;
  Vec gates;  // (i, f, o, g) for lm, (i, f, o, r) otherwise
  Vec alpha;  // attention weights; empty without attention
  Vec m;      // conditioning vector used at this step
};

// Fixed per-turn conditioning for decoding.
struct Conditioning {
  PolicyInput input;
  Vec m;                     // without attention
  AttentionContext context;  // with attention
};

struct StepResult {
  CellState state;
  Vec log_probs;
  Vec gates;
  Vec alpha;
  Vec m;
};

class Model {
 public:
  Model() = default;
  Model(ModelConfig config, std::size_t vocab_size, std::vector<SlotSpec> slots,
        IndicatorSpec indicators, int bos_id = 2);

  const ModelConfig& config() const { return config_; }
  const std::vector<SlotSpec>& slots() const { return slots_; }
  const IndicatorSpec& indicators() const { return indicators_; }
  std::size_t vocab_size() const { return decoder_.vocab_size(); }
  int bos_id() const { return bos_; }

  // Uniform in [-init_range, init_range] for every parameter.
  void initialize(Rng& rng);

  // Teacher-forced loss of one turn; with `backward` the gradients are
  // accumulated into the parameters.
  TurnLoss turn_loss(const TurnExample& turn, bool backward);
  std::vector<TeacherStep> forward_teacher(const TurnExample& turn) const;

  Conditioning condition(const std::vector<int>& user, const MatchVector& x,
                         const std::vector<Vec>& beliefs) const;
  StepResult step(const Conditioning& cond, int input, const CellState& prev) const;

  std::vector<Parameter*> parameters();
  std::vector<const Parameter*> parameters() const;

  IntentNet& intent() { return intent_; }
  PolicyNet& policy() { return policy_; }
  Decoder& decoder() { return decoder_; }
  const Decoder& decoder() const { return decoder_; }

  Json to_json() const;
  static Model from_json(const Json& json);

 private:
  ModelConfig config_;
  std::vector<SlotSpec> slots_;
  IndicatorSpec indicators_;
  int bos_ = 2;
  IntentNet intent_;
  PolicyNet policy_;
  Decoder decoder_;
};

}  // namespace snapdial
