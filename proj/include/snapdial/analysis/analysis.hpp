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

#include <optional>
#include <string>
#include <vector>

#include "snapdial/decoding/respond.hpp"

namespace snapdial {

// Raw per-step gate vectors (i, f, o, g/r blocks of `hidden` each).
std::vector<Vec> gate_trace(const Model& model, const std::vector<PreparedDialogue>& data);

struct GateStats {
  std::string config;
  std::size_t steps = 0;
  double mean_i = 0.0;
  double mean_f = 0.0;
  double mean_o = 0.0;
  std::optional<double> mean_r;          // absent for lm
  std::optional<double> r_over_o;        // mean(r) / mean(o)
  std::optional<double> mean_r_over_o;   // mean of r / o

  Json to_json() const;
};

GateStats gate_stats_from_trace(const std::string& config, Variant variant, std::size_t hidden,
                                const std::vector<Vec>& trace);
// Means over every unit and teacher-forced step of the data.
GateStats gate_stats(const Model& model, const std::vector<PreparedDialogue>& data);

// config,meanI,meanF,meanRoverO (empty r/o for lm)
std::string gates_csv(const std::vector<GateStats>& rows);

struct HeatMap {
  Tokens tokens;
  std::vector<std::string> trackers;
  std::vector<Vec> rows;  // one attention distribution per token

  Json to_json() const;
};

struct NeuronTrace {
  Tokens tokens;
  std::vector<std::string> indicators;
  std::vector<Vec> values;  // (m + 1) / 2 of the indicator units, per token

  Json to_json() const;
};

// Top-1 decode of one corpus turn (gold prefix) with its teacher-forced
// replay; the basis of heat maps and traces.
struct TurnReplay {
  Tokens tokens;
  std::vector<TeacherStep> steps;
};

TurnReplay replay_turn(const Model& model, const Pipeline& env, const Dialogue& dialogue,
                       std::size_t turn, const BeamOptions& beam);
TurnReplay replay_response(const Model& model, const Vocabulary& vocab, const Response& response);

// Throw UnsupportedConfigError without attention / snapshot respectively.
HeatMap attention_heatmap(const Model& model, const Ontology& ontology, const TurnReplay& replay);
NeuronTrace snapshot_trace(const Model& model, const TurnReplay& replay);

// Mean Shannon entropy (nats) of heat-map rows over every turn of the
// dialogues.
double mean_attention_entropy(const Model& model, const Pipeline& env,
                              const std::vector<Dialogue>& dialogues, const BeamOptions& beam);

}  // namespace snapdial
