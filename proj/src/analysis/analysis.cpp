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

#include "snapdial/analysis/analysis.hpp"

#include <cmath>
#include <cstdio>

#include "snapdial/error.hpp"

namespace snapdial {

std::vector<Vec> gate_trace(const Model& model, const std::vector<PreparedDialogue>& data) {
  std::vector<Vec> out;
  for (const auto& d : data) {
    for (const auto& t : d.turns) {
      for (auto& s : model.forward_teacher(t)) out.push_back(std::move(s.gates));
    }
  }
  return out;
}

GateStats gate_stats_from_trace(const std::string& config, Variant variant, std::size_t hidden,
                                const std::vector<Vec>& trace) {
  GateStats g;
  g.config = config;
  g.steps = trace.size();
  if (trace.empty()) return g;
  double si = 0.0, sf = 0.0, so = 0.0, sr = 0.0, ratio = 0.0;
  for (const Vec& v : trace) {
    if (v.size() != 4 * hidden) throw DimensionError("gate vector has the wrong size");
    for (std::size_t k = 0; k < hidden; ++k) {
      si += v[k];
      sf += v[hidden + k];
      so += v[2 * hidden + k];
      if (variant != Variant::kLm) {
        sr += v[3 * hidden + k];
        ratio += v[3 * hidden + k] / v[2 * hidden + k];
      }
    }
  }
  const double count = static_cast<double>(trace.size() * hidden);
  g.mean_i = si / count;
  g.mean_f = sf / count;
  g.mean_o = so / count;
  if (variant != Variant::kLm) {
    g.mean_r = sr / count;
    g.r_over_o = sr / so;
    g.mean_r_over_o = ratio / count;
  }
  return g;
}

GateStats gate_stats(const Model& model, const std::vector<PreparedDialogue>& data) {
  return gate_stats_from_trace(model.config().label(), model.config().variant,
                               model.config().hidden, gate_trace(model, data));
}

Json GateStats::to_json() const {
  auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"config", config}, {"steps", steps}, {"meanI", mean_i}, {"meanF", mean_f},
              {"meanO", mean_o},  {"meanR", opt(mean_r)}, {"meanRoverO", opt(r_over_o)},
              {"meanOfRoverO", opt(mean_r_over_o)}};
}

std::string gates_csv(const std::vector<GateStats>& rows) {
  std::string out = "config,meanI,meanF,meanRoverO\n";
  char buf[128];
  for (const auto& g : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,", g.mean_i, g.mean_f);
    out += g.config + "," + buf;
    if (g.r_over_o) {
      std::snprintf(buf, sizeof(buf), "%.17g", *g.r_over_o);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

Json HeatMap::to_json() const {
  return Json{{"tokens", tokens}, {"trackers", trackers}, {"rows", rows}};
}

Json NeuronTrace::to_json() const {
  return Json{{"tokens", tokens}, {"indicators", indicators}, {"values", values}};
}

TurnReplay replay_turn(const Model& model, const Pipeline& env, const Dialogue& dialogue,
                       std::size_t turn, const BeamOptions& beam) {
  if (turn >= dialogue.turns.size()) {
    throw ConfigError("dialogue " + dialogue.id + " has no turn " + std::to_string(turn));
  }
  ModelConfig config = model.config();
  config.snapshot = false;
  const PreparedDialogue prepared = prepare_dialogue(dialogue, env, config, model.indicators());
  TurnExample ex = prepared.turns[turn];
  const Conditioning cond = model.condition(ex.user, ex.x, ex.beliefs);
  ex.sys = beam_search(model, cond, beam).front().tokens;
  return {env.vocab->decode(ex.sys), model.forward_teacher(ex)};
}

TurnReplay replay_response(const Model& model, const Vocabulary& vocab, const Response& response) {
  return {vocab.decode(response.example.sys), model.forward_teacher(response.example)};
}

HeatMap attention_heatmap(const Model& model, const Ontology& ontology, const TurnReplay& replay) {
  if (!model.config().attention) {
    throw UnsupportedConfigError("heat maps need an attention model");
  }
  HeatMap h;
  h.tokens = replay.tokens;
  for (const auto& slot : ontology.informable) h.trackers.push_back(slot.name);
  for (const auto& slot : ontology.requestable) h.trackers.push_back(slot + "?");
  for (const auto& s : replay.steps) h.rows.push_back(s.alpha);
  return h;
}

NeuronTrace snapshot_trace(const Model& model, const TurnReplay& replay) {
  if (!model.config().snapshot) {
    throw UnsupportedConfigError("traces need a snapshot-trained model");
  }
  NeuronTrace t;
  t.tokens = replay.tokens;
  t.indicators = model.indicators().ids;
  const std::size_t d = model.indicators().size();
  for (const auto& s : replay.steps) {
    Vec row(d);
    for (std::size_t k = 0; k < d; ++k) row[k] = 0.5 * (s.m[k] + 1.0);
    t.values.push_back(std::move(row));
  }
  return t;
}

double mean_attention_entropy(const Model& model, const Pipeline& env,
                              const std::vector<Dialogue>& dialogues, const BeamOptions& beam) {
  if (!model.config().attention) {
    throw UnsupportedConfigError("attention entropy needs an attention model");
  }
  double sum = 0.0;
  std::size_t rows = 0;
  for (const auto& d : dialogues) {
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      for (const auto& s : replay_turn(model, env, d, t, beam).steps) {
        for (double a : s.alpha) {
          if (a > 0.0) sum -= a * std::log(a);
        }
        ++rows;
      }
    }
  }
  return rows ? sum / static_cast<double>(rows) : 0.0;
}

}  // namespace snapdial
