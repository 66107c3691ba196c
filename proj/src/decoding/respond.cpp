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

#include "snapdial/decoding/respond.hpp"

#include "snapdial/error.hpp"

namespace snapdial {

namespace {

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

TopValues top_values(const BeliefState& belief, const Ontology& ontology) {
  return belief.top_values(ontology);
}

}  // namespace

DialogueState::DialogueState(const Ontology& ontology, std::uint64_t seed)
    : belief(BeliefState::prior(ontology)), rng(mix_seed(seed, 0xdb)) {}

Response respond(const Agent& agent, DialogueState& state, const std::string& text) {
  const Pipeline& env = agent.env;
  const Model& model = *agent.model;
  Response r;
  const Tokens surface = tokenize(text);
  r.user = stage("delexicalise", [&] { return agent.lexicon->delexicalise(surface); });
  r.belief = stage("track", [&] { return env.tracker->step(state.belief, surface); });
  r.db = stage("db_query", [&] {
    return db_query(r.belief, *env.ontology, *env.database, state.rng, state.pointer);
  });
  const Conditioning cond = stage("policy", [&] {
    r.example.user = env.vocab->encode(r.user);
    r.example.x = r.db.x;
    for (const auto& slot : env.ontology->tracker_slots()) {
      r.example.beliefs.push_back(
          belief_vector(r.belief, *env.ontology, slot, model.config().belief));
    }
    return model.condition(r.example.user, r.example.x, r.example.beliefs);
  });
  r.candidates = stage("beam_search", [&] { return beam_search(model, cond, agent.beam); });
  r.example.sys = r.candidates.front().tokens;
  r.skeletal = env.vocab->decode(r.example.sys);
  r.entity = r.db.pointer;
  stage("lexicalise", [&] {
    r.complete = lexicalise_marked(r.skeletal, *env.ontology, r.entity,
                                   top_values(r.belief, *env.ontology), r.surface);
    return 0;
  });
  state.belief = r.belief;
  state.pointer = r.db.pointer;
  state.user_turns.push_back(surface);
  return r;
}

std::vector<DecodedTurn> decode_dialogue(const Model& model, const Pipeline& env,
                                         const Dialogue& dialogue, const BeamOptions& beam) {
  ModelConfig config = model.config();
  config.snapshot = false;
  const PreparedDialogue prepared = prepare_dialogue(dialogue, env, config, model.indicators());
  const auto beliefs = env.tracker->track(dialogue);
  std::vector<DecodedTurn> out;
  for (std::size_t t = 0; t < prepared.turns.size(); ++t) {
    const TurnExample& ex = prepared.turns[t];
    const Conditioning cond = model.condition(ex.user, ex.x, ex.beliefs);
    const auto candidates = beam_search(model, cond, beam);
    DecodedTurn d;
    d.dialogue_id = dialogue.id;
    d.turn = static_cast<int>(t);
    for (const auto& c : candidates) d.candidates.emplace_back(env.vocab->decode(c.tokens), c.score);
    d.chosen = d.candidates.front().first;
    const Entity* entity = prepared.db[t].pointer;
    lexicalise_marked(d.chosen, *env.ontology, entity,
                      top_values(beliefs[t], *env.ontology), d.surface);
    d.reference = dialogue.turns[t].sys;
    if (entity) d.entity = entity->name;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<DecodedTurn> decode_corpus(const Model& model, const Pipeline& env,
                                       const std::vector<Dialogue>& dialogues,
                                       const BeamOptions& beam) {
  std::vector<DecodedTurn> out;
  for (const auto& d : dialogues) {
    auto turns = decode_dialogue(model, env, d, beam);
    out.insert(out.end(), std::make_move_iterator(turns.begin()),
               std::make_move_iterator(turns.end()));
  }
  return out;
}

}  // namespace snapdial
