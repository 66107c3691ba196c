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

#include "snapdial/evaluation/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "snapdial/error.hpp"

namespace snapdial {

namespace {

using NgramCounts = std::map<Tokens, int>;

NgramCounts count_ngrams(const Tokens& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Tokens(tokens.begin() + static_cast<long>(i),
                    tokens.begin() + static_cast<long>(i + n))];
  }
  return counts;
}

struct BleuStats {
  std::vector<double> matches, totals;
  double cand_len = 0.0, ref_len = 0.0;

  explicit BleuStats(int max_n) : matches(static_cast<std::size_t>(max_n), 0.0),
                                  totals(static_cast<std::size_t>(max_n), 0.0) {}

  void add(const Tokens& cand, const Tokens& ref) {
    cand_len += static_cast<double>(cand.size());
    ref_len += static_cast<double>(ref.size());
    for (std::size_t n = 1; n <= matches.size(); ++n) {
      const NgramCounts c = count_ngrams(cand, n);
      const NgramCounts r = count_ngrams(ref, n);
      for (const auto& [gram, k] : c) {
        totals[n - 1] += k;
        const auto it = r.find(gram);
        if (it != r.end()) matches[n - 1] += std::min(k, it->second);
      }
    }
  }

  double score() const {
    if (cand_len == 0.0) return 0.0;
    double log_sum = 0.0;
    for (std::size_t n = 0; n < matches.size(); ++n) {
      const double p = n == 0 ? matches[0] / totals[0] : (matches[n] + 1.0) / (totals[n] + 1.0);
      if (p == 0.0) return 0.0;
      log_sum += std::log(p);
    }
    const double bp = cand_len < ref_len ? std::exp(1.0 - ref_len / cand_len) : 1.0;
    return bp * std::exp(log_sum / static_cast<double>(matches.size()));
  }
};

std::set<std::string> delex_types(const Tokens& tokens) {
  std::set<std::string> out;
  for (const auto& t : tokens) {
    if (is_delex_token(t)) out.insert(t);
  }
  return out;
}

bool contains(const Tokens& tokens, const std::string& token) {
  return std::find(tokens.begin(), tokens.end(), token) != tokens.end();
}

bool satisfies(const Entity& entity, const Constraints& constraints) {
  for (const auto& [slot, value] : constraints) {
    if (value && entity.value(slot) != *value) return false;
  }
  return true;
}

}  // namespace

Tokens strip_eos(const Tokens& tokens) {
  Tokens out;
  for (const auto& t : tokens) {
    if (t != kEosToken) out.push_back(t);
  }
  return out;
}

double sentence_bleu(const Tokens& candidate, const Tokens& reference, int max_n) {
  if (max_n < 1) throw ConfigError("BLEU order must be at least 1");
  BleuStats stats(max_n);
  stats.add(strip_eos(candidate), strip_eos(reference));
  return stats.score();
}

double corpus_bleu(const std::vector<Tokens>& candidates, const std::vector<Tokens>& references,
                   int max_n) {
  if (max_n < 1) throw ConfigError("BLEU order must be at least 1");
  if (candidates.size() != references.size()) {
    throw DimensionError("corpus BLEU needs one reference per candidate");
  }
  BleuStats stats(max_n);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    stats.add(strip_eos(candidates[i]), strip_eos(references[i]));
  }
  return stats.score();
}

TurnBleu turn_bleu(const std::vector<Tokens>& ranked, const Tokens& reference,
                   bool mean_of_five) {
  TurnBleu out;
  if (ranked.empty()) return out;
  out.t1 = sentence_bleu(ranked[0], reference);
  const std::size_t k = std::min<std::size_t>(5, ranked.size());
  double best = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double b = i == 0 ? out.t1 : sentence_bleu(ranked[i], reference);
    best = std::max(best, b);
    sum += b;
  }
  out.t5 = mean_of_five ? sum / static_cast<double>(k) : best;
  return out;
}

std::optional<double> slot_match(const Tokens& candidate, const Tokens& reference) {
  const auto cand = delex_types(candidate);
  if (cand.empty()) return std::nullopt;
  const auto ref = delex_types(reference);
  std::size_t hit = 0;
  for (const auto& t : cand) hit += ref.count(t);
  return static_cast<double>(hit) / static_cast<double>(cand.size());
}

bool task_success(const Goal& goal, const std::vector<PredictedTurn>& turns,
                  const Database& database) {
  const Constraints constraints = goal.as_constraints();
  std::optional<std::size_t> offer;
  for (std::size_t t = 0; t < turns.size() && !offer; ++t) {
    if (turns[t].entity.empty() || !contains(turns[t].tokens, "[v.name]")) continue;
    const Entity* e = database.find(turns[t].entity);
    if (e && satisfies(*e, constraints)) offer = t;
  }
  if (!offer) return false;
  for (const auto& slot : goal.requests) {
    const std::string token = "[v." + slot + "]";
    bool answered = false;
    for (std::size_t t = *offer; t < turns.size() && !answered; ++t) {
      answered = contains(turns[t].tokens, token);
    }
    if (!answered) return false;
  }
  return true;
}

Json DecodedTurn::to_json() const {
  Json j;
  j["dialogue"] = dialogue_id;
  j["turn"] = turn;
  Json cands = Json::array();
  for (const auto& [tokens, score] : candidates) {
    cands.push_back(Json{{"tokens", tokens}, {"score", score}});
  }
  j["candidates"] = std::move(cands);
  j["chosen"] = chosen;
  j["surface"] = surface;
  j["reference"] = reference;
  j["entity"] = entity;
  return j;
}

DecodedTurn DecodedTurn::from_json(const Json& json) {
  try {
    DecodedTurn d;
    d.dialogue_id = json.at("dialogue").get<std::string>();
    d.turn = json.at("turn").get<int>();
    for (const auto& c : json.at("candidates")) {
      d.candidates.emplace_back(c.at("tokens").get<Tokens>(), c.at("score").get<double>());
    }
    d.chosen = json.at("chosen").get<Tokens>();
    d.surface = json.at("surface").get<std::string>();
    d.reference = json.at("reference").get<Tokens>();
    d.entity = json.at("entity").get<std::string>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad decode record: ") + e.what());
  }
}

std::string dump_jsonl(const std::vector<DecodedTurn>& turns) {
  std::string out;
  for (const auto& t : turns) {
    out += t.to_json().dump();
    out += '\n';
  }
  return out;
}

std::vector<DecodedTurn> parse_jsonl(const std::string& text) {
  std::vector<DecodedTurn> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(DecodedTurn::from_json(Json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("decode dump line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

Json Metrics::to_json() const {
  return Json{{"success", success},       {"slotMatch", slot_match},
              {"t5Bleu", t5_bleu},        {"t1Bleu", t1_bleu},
              {"corpusT1Bleu", corpus_t1_bleu}, {"dialogues", dialogues},
              {"turns", turns}};
}

Metrics compute_metrics(const std::vector<DecodedTurn>& dump,
                        const std::vector<Dialogue>& dialogues, const Database& database,
                        bool mean_of_five) {
  std::map<std::pair<std::string, int>, const DecodedTurn*> index;
  for (const auto& d : dump) index[{d.dialogue_id, d.turn}] = &d;

  Metrics m;
  std::size_t successes = 0, matched_turns = 0;
  double match_sum = 0.0, t1_sum = 0.0, t5_sum = 0.0;
  std::vector<Tokens> cands, refs;
  for (const auto& dialogue : dialogues) {
    std::vector<PredictedTurn> predicted;
    for (std::size_t t = 0; t < dialogue.turns.size(); ++t) {
      const auto it = index.find({dialogue.id, static_cast<int>(t)});
      if (it == index.end()) {
        throw FormatError("decode dump lacks dialogue " + dialogue.id + " turn " +
                          std::to_string(t));
      }
      const DecodedTurn& d = *it->second;
      const Tokens& ref = dialogue.turns[t].sys;
      std::vector<Tokens> ranked;
      for (const auto& c : d.candidates) ranked.push_back(c.first);
      if (ranked.empty()) ranked.push_back(d.chosen);
      const TurnBleu b = turn_bleu(ranked, ref, mean_of_five);
      t1_sum += b.t1;
      t5_sum += b.t5;
      if (const auto r = slot_match(d.chosen, ref)) {
        match_sum += *r;
        ++matched_turns;
      }
      cands.push_back(d.chosen);
      refs.push_back(ref);
      predicted.push_back({d.chosen, d.entity});
      ++m.turns;
    }
    successes += task_success(dialogue.goal, predicted, database) ? 1 : 0;
    ++m.dialogues;
  }
  if (m.dialogues > 0) {
    m.success = 100.0 * static_cast<double>(successes) / static_cast<double>(m.dialogues);
  }
  if (matched_turns > 0) m.slot_match = 100.0 * match_sum / static_cast<double>(matched_turns);
  if (m.turns > 0) {
    m.t1_bleu = t1_sum / static_cast<double>(m.turns);
    m.t5_bleu = t5_sum / static_cast<double>(m.turns);
  }
  m.corpus_t1_bleu = corpus_bleu(cands, refs);
  return m;
}

MetricSummary summarize_values(const std::vector<double>& values) {
  MetricSummary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

AggregateMetrics aggregate(const std::vector<Metrics>& per_seed) {
  AggregateMetrics a;
  a.per_seed = per_seed;
  a.seed_count = per_seed.size();
  std::vector<double> s, m, t5, t1;
  for (const auto& x : per_seed) {
    s.push_back(x.success);
    m.push_back(x.slot_match);
    t5.push_back(x.t5_bleu);
    t1.push_back(x.t1_bleu);
  }
  a.success = summarize_values(s);
  a.slot_match = summarize_values(m);
  a.t5_bleu = summarize_values(t5);
  a.t1_bleu = summarize_values(t1);
  return a;
}

Json AggregateMetrics::to_json() const {
  auto summary = [](const MetricSummary& s) { return Json{{"mean", s.mean}, {"std", s.std}}; };
  Json j;
  j["success"] = summary(success);
  j["slotMatch"] = summary(slot_match);
  j["t5Bleu"] = summary(t5_bleu);
  j["t1Bleu"] = summary(t1_bleu);
  j["seedCount"] = seed_count;
  Json seeds = Json::array();
  for (const auto& m : per_seed) seeds.push_back(m.to_json());
  j["perSeed"] = std::move(seeds);
  return j;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out =
      "arch,belief,snapshot,success,slotMatch,t5Bleu,t1Bleu,seedCount,"
      "successStd,slotMatchStd,t5BleuStd,t1BleuStd\n";
  char line[384];
  for (const auto& r : rows) {
    const AggregateMetrics& m = r.metrics;
    std::snprintf(line, sizeof(line), "%s,%s,%d,%.4f,%.4f,%.6f,%.6f,%zu,%.4f,%.4f,%.6f,%.6f\n",
                  r.arch.c_str(), r.belief.c_str(), r.snapshot ? 1 : 0, m.success.mean,
                  m.slot_match.mean, m.t5_bleu.mean, m.t1_bleu.mean, m.seed_count, m.success.std,
                  m.slot_match.std, m.t5_bleu.std, m.t1_bleu.std);
    out += line;
  }
  return out;
}

Json report_json(const std::vector<ReportRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j{{"arch", r.arch}, {"belief", r.belief}, {"snapshot", r.snapshot}};
    j["metrics"] = r.metrics.to_json();
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace snapdial
