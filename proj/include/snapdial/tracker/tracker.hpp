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
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "snapdial/corpus/delex.hpp"
#include "snapdial/corpus/dialogue.hpp"
#include "snapdial/json_io.hpp"
#include "snapdial/numerics/tensor.hpp"

namespace snapdial {

enum class BeliefRepresentation { kFull, kSummary };

std::string to_string(BeliefRepresentation rep);
BeliefRepresentation belief_from_string(const std::string& text);

// Per-slot tracker outputs after some user turn.
struct BeliefState {
  // slot -> distribution over (values..., dontcare, none)
  std::map<std::string, std::vector<double>> informable;
  // slot -> probability the slot was requested in this turn
  std::map<std::string, double> requestable;

  // Initial state before any user input: all mass on "none", no requests.
  static BeliefState prior(const Ontology& ontology);

  // Most probable class per informable slot, as a value string, "dontcare"
  // or "none". Ties break towards the earlier class.
  std::map<std::string, std::string> top_values(const Ontology& ontology) const;
};

// [sum of value probabilities, p(dontcare), p(none)].
std::vector<double> summarize_slot(const std::vector<double>& full);
BeliefState summarize(const BeliefState& full);

// Input vector the policy sees for one tracker slot (tracker order:
// informables, then requestables).
std::vector<double> belief_vector(const BeliefState& state, const Ontology& ontology,
                                  const std::string& slot, BeliefRepresentation rep);
std::size_t belief_dim(const Ontology& ontology, const std::string& slot,
                       BeliefRepresentation rep);

// Sparse bag of n-gram features: (feature index, count).
using SparseFeatures = std::vector<std::pair<int, double>>;

// Bag-of-n-gram (n <= 2) classifiers over the lexical user turn. Each
// informable slot scores every value through a shared weight vector applied
// to a value-specific view of the utterance (the value under consideration,
// other values of the slot, other slots' values and slot phrases are each
// replaced by a distinct placeholder), plus a recurrent term on the
// previous turn's probability of the same class.
class TrackerModel {
 public:
  TrackerModel(Ontology ontology, const Database& database,
               std::vector<std::string> features);

  const Ontology& ontology() const { return ontology_; }
  const std::vector<std::string>& features() const { return features_; }

  BeliefState step(const BeliefState& previous, const Tokens& user_surface) const;
  // Belief after each turn of the dialogue.
  std::vector<BeliefState> track(const Dialogue& dialogue) const;
  BeliefState track_prefix(const std::vector<Tokens>& user_turns) const;

  std::vector<Parameter*> parameters();
  std::string parameter_hash() const;

  Json to_json() const;
  static TrackerModel from_json(const Json& json, const Database& database);
  void save(const std::filesystem::path& path) const;
  static TrackerModel load(const std::filesystem::path& path, const Database& database);

  // Views of the utterance; exposed for training and tests.
  Tokens informable_view(const Tokens& surface, const std::string& slot,
                         const std::string& value) const;
  Tokens requestable_view(const Tokens& surface, const std::string& slot) const;
  SparseFeatures featurize(const Tokens& view) const;

  // Per-slot parameters. Informable rows: (value, dontcare, none).
  struct InformableHead {
    Parameter w;     // [3 x F]
    Parameter beta;  // [3]
    Parameter b;     // [3]
  };
  struct RequestableHead {
    Parameter w;  // [1 x F]
    Parameter b;  // [1]
  };
  std::map<std::string, InformableHead>& informable_heads() { return informable_; }
  std::map<std::string, RequestableHead>& requestable_heads() { return requestable_; }

 private:
  Ontology ontology_;
  Lexicon lexicon_;
  std::vector<std::string> features_;
  std::unordered_map<std::string, int> feature_index_;
  std::map<std::string, InformableHead> informable_;
  std::map<std::string, RequestableHead> requestable_;
};

// Unigrams and bigrams of the view with sentence boundary markers.
std::vector<std::string> ngram_strings(const Tokens& view);

struct TrackerTrainOptions {
  double learning_rate = 0.1;
  double l2 = 1e-6;
  int max_epochs = 30;
  int patience = 3;
  std::uint64_t seed = 1;
};

struct TrackerHistory {
  std::vector<double> train_loss;
  std::vector<double> valid_loss;
  int best_epoch = 0;
};

TrackerModel train_trackers(const Ontology& ontology, const Database& database,
                            const std::vector<Dialogue>& train,
                            const std::vector<Dialogue>& valid,
                            const TrackerTrainOptions& options = {},
                            TrackerHistory* history = nullptr);

// Summed cross-entropy of all slots over all turns.
double tracker_loss(const TrackerModel& model, const std::vector<Dialogue>& dialogues);

// Top-1 accuracy per informable slot and thresholded accuracy per
// requestable slot.
std::map<std::string, double> tracker_accuracy(const TrackerModel& model,
                                               const std::vector<Dialogue>& dialogues);

}  // namespace snapdial
