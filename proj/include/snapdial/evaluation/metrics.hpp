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

#include "snapdial/corpus/dialogue.hpp"
#include "snapdial/json_io.hpp"

namespace snapdial {

// Drops end-of-sentence tokens.
Tokens strip_eos(const Tokens& tokens);

// Sentence BLEU up to `max_n`-grams, uniform weights. p1 is the plain
// clipped precision; p_n for n >= 2 is (matches + 1) / (total + 1). Brevity
// penalty exp(1 - r / c) when c < r. End-of-sentence tokens are ignored;
// an empty candidate scores 0.
double sentence_bleu(const Tokens& candidate, const Tokens& reference, int max_n = 4);

// Corpus BLEU: n-gram statistics pooled over all pairs before the same
// precision and brevity rules.
double corpus_bleu(const std::vector<Tokens>& candidates, const std::vector<Tokens>& references,
                   int max_n = 4);

struct TurnBleu {
  double t1 = 0.0;
  double t5 = 0.0;
};

// t1 = BLEU of the first candidate; t5 = best (or mean) over the first five.
TurnBleu turn_bleu(const std::vector<Tokens>& ranked, const Tokens& reference,
                   bool mean_of_five = false);

// Fraction of the candidate's delexicalised token types that also occur in
// the reference; nullopt when the candidate has none.
std::optional<double> slot_match(const Tokens& candidate, const Tokens& reference);

// One predicted system turn in corpus mode.
struct PredictedTurn {
  Tokens tokens;
  std::string entity;  // entity pointer name, empty when absent
};

// Success iff some predicted turn generates [v.name] while pointing at an
// entity that satisfies every goal constraint, and each requested slot's
// [v.slot] token appears in a predicted turn at or after that offer.
bool task_success(const Goal& goal, const std::vector<PredictedTurn>& turns,
                  const Database& database);

// Decode dump record (one JSON line per turn).
struct DecodedTurn {
  std::string dialogue_id;
  int turn = 0;
  std::vector<std::pair<Tokens, double>> candidates;
  Tokens chosen;
  std::string surface;
  Tokens reference;
  std::string entity;

  Json to_json() const;
  static DecodedTurn from_json(const Json& json);
};

std::string dump_jsonl(const std::vector<DecodedTurn>& turns);
std::vector<DecodedTurn> parse_jsonl(const std::string& text);

struct Metrics {
  double success = 0.0;     // percent of dialogues
  double slot_match = 0.0;  // percent, over turns with delexicalised tokens
  double t5_bleu = 0.0;
  double t1_bleu = 0.0;
  double corpus_t1_bleu = 0.0;
  std::size_t dialogues = 0;
  std::size_t turns = 0;

  Json to_json() const;
};

// Metrics of one decode dump against the dialogues it was produced from.
// Throws FormatError when a dialogue or turn is missing from the dump.
Metrics compute_metrics(const std::vector<DecodedTurn>& dump,
                        const std::vector<Dialogue>& dialogues, const Database& database,
                        bool mean_of_five = false);

struct MetricSummary {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for one seed
};

MetricSummary summarize_values(const std::vector<double>& values);

struct AggregateMetrics {
  MetricSummary success, slot_match, t5_bleu, t1_bleu;
  std::size_t seed_count = 0;
  std::vector<Metrics> per_seed;

  Json to_json() const;
};

AggregateMetrics aggregate(const std::vector<Metrics>& per_seed);

// Results table row: arch, belief, snapshot, success, slotMatch, t5Bleu,
// t1Bleu, seedCount, then the seed standard deviation of each metric.
struct ReportRow {
  std::string arch;
  std::string belief;
  bool snapshot = false;
  AggregateMetrics metrics;
};

std::string report_csv(const std::vector<ReportRow>& rows);
Json report_json(const std::vector<ReportRow>& rows);

}  // namespace snapdial
