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

#include "fixture.hpp"

#include <unistd.h>

namespace snapdial::testing {

const SmallWorld& small_world() {
  static const SmallWorld world = [] {
    SmallWorld w;
    w.ws = make_workspace(100, 7);
    w.tracker = std::make_unique<TrackerModel>(train_trackers(
        w.ws.corpus.ontology, w.ws.database, w.ws.split.train, w.ws.split.valid));
    w.lexicon = std::make_unique<Lexicon>(w.ws.corpus.ontology, w.ws.database);
    return w;
  }();
  return world;
}

ModelConfig model_config(Variant v, bool attention, bool snapshot, BeliefRepresentation belief,
                         std::size_t hidden) {
  ModelConfig c;
  c.variant = v;
  c.attention = attention;
  c.snapshot = snapshot;
  c.belief = belief;
  c.hidden = hidden;
  return c;
}

Model random_model(const ModelConfig& config, std::uint64_t seed, double range) {
  const auto& w = small_world();
  ModelConfig c = config;
  c.init_range = range;
  Model m(c, w.ws.vocab.size(), slot_specs(w.ws.corpus.ontology, c.belief),
          default_indicator_spec(w.ws.corpus.ontology), Vocabulary::kBos);
  Rng rng(seed);
  m.initialize(rng);
  return m;
}

Model quick_trained(const ModelConfig& config, std::uint64_t seed, int epochs) {
  const auto& w = small_world();
  TrainConfig tc;
  tc.model = config;
  tc.seed = seed;
  tc.max_epochs = epochs;
  const auto spec = default_indicator_spec(w.ws.corpus.ontology);
  const auto train_data = prepare_dialogues(w.ws.split.train, w.pipeline(), config, spec);
  const auto valid_data = prepare_dialogues(w.ws.split.valid, w.pipeline(), config, spec);
  return train(tc, w.pipeline(), train_data, valid_data);
}

std::vector<DecodedTurn> synthetic_dump(const std::vector<Dialogue>& dialogues,
                                        const Database& database, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DecodedTurn> out;
  for (const auto& d : dialogues) {
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      const Dialogue& donor = rng.below(2) == 0 ? d : dialogues[rng.below(dialogues.size())];
      Tokens chosen = &donor == &d ? d.turns[t].sys : donor.turns[rng.below(donor.turns.size())].sys;
      if (chosen.size() > 2 && rng.below(3) == 0) {
        chosen.erase(chosen.begin() + static_cast<long>(rng.below(chosen.size() - 1)));
      }
      DecodedTurn turn;
      turn.dialogue_id = d.id;
      turn.turn = static_cast<int>(t);
      turn.chosen = chosen;
      turn.candidates = {{chosen, -1.0}, {d.turns[t].sys, -2.0}};
      turn.reference = d.turns[t].sys;
      const auto fits = database.matches(d.goal.as_constraints());
      const std::size_t pick = rng.below(4);
      if (pick == 1 && !fits.empty()) turn.entity = fits[rng.below(fits.size())]->name;
      if (pick >= 2) turn.entity = database.entities[rng.below(database.entities.size())].name;
      out.push_back(std::move(turn));
    }
  }
  return out;
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("snapdial-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace snapdial::testing
