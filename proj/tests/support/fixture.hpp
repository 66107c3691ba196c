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

#include <memory>

#include "snapdial/app/runs.hpp"
#include "snapdial/app/workspace.hpp"
#include "snapdial/evaluation/metrics.hpp"

namespace snapdial::testing {

// 100-dialogue corpus with trained trackers, built once per process.
struct SmallWorld {
  Workspace ws;
  std::unique_ptr<TrackerModel> tracker;
  std::unique_ptr<Lexicon> lexicon;

  Pipeline pipeline() const {
    return {&ws.corpus.ontology, &ws.database, tracker.get(), &ws.vocab};
  }
  RunEnv run_env() const { return {&ws, tracker.get(), "test"}; }
};

const SmallWorld& small_world();

ModelConfig model_config(Variant v, bool attention, bool snapshot,
                         BeliefRepresentation belief = BeliefRepresentation::kSummary,
                         std::size_t hidden = 16);

// Randomly initialised model over the small world's vocabulary.
Model random_model(const ModelConfig& config, std::uint64_t seed, double range = 0.3);

// A few epochs of training on the small world.
Model quick_trained(const ModelConfig& config, std::uint64_t seed, int epochs = 3);

// Decode dump whose chosen responses are gold turns of other dialogues
// (some with a token dropped) and whose entities are random venues or empty.
std::vector<DecodedTurn> synthetic_dump(const std::vector<Dialogue>& dialogues,
                                        const Database& database, std::uint64_t seed);

std::filesystem::path temp_dir(const std::string& name);

}  // namespace snapdial::testing
