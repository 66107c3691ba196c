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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "snapdial/corpus/delex.hpp"
#include "snapdial/decoding/beam.hpp"
#include "snapdial/evaluation/metrics.hpp"
#include "snapdial/training/training.hpp"

namespace snapdial {

// Failure inside the turn pipeline, tagged with the stage that raised it
// (delexicalise, track, db_query, policy, beam_search, lexicalise).
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Shared, read-only resources of a running agent.
struct Agent {
  Pipeline env;
  const Lexicon* lexicon = nullptr;
  const Model* model = nullptr;
  BeamOptions beam;
};

// Mutable per-conversation state.
struct DialogueState {
  BeliefState belief;
  const Entity* pointer = nullptr;
  Rng rng;
  std::vector<Tokens> user_turns;

  DialogueState(const Ontology& ontology, std::uint64_t seed);
};

struct Response {
  Tokens user;  // delexicalised user turn
  TurnExample example;  // model inputs, with sys = chosen token ids
  std::vector<Candidate> candidates;
  Tokens skeletal;
  std::string surface;
  bool complete = true;  // false when some token could not be lexicalised
  BeliefState belief;
  DbResult db;
  const Entity* entity = nullptr;
};

// One end-to-end turn: delexicalise, track, query, condition, beam search
// and lexicalise the top candidate with the entity pointer. Unfillable
// tokens are kept marked as <<token>> in the surface string.
Response respond(const Agent& agent, DialogueState& state, const std::string& text);

// Corpus mode: every system turn of each dialogue is predicted from the
// gold prefix (tracker beliefs and pointer chain as in training).
std::vector<DecodedTurn> decode_dialogue(const Model& model, const Pipeline& env,
                                         const Dialogue& dialogue, const BeamOptions& beam);
std::vector<DecodedTurn> decode_corpus(const Model& model, const Pipeline& env,
                                       const std::vector<Dialogue>& dialogues,
                                       const BeamOptions& beam);

}  // namespace snapdial
