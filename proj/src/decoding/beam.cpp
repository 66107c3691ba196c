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

#include "snapdial/decoding/beam.hpp"

#include <algorithm>
#include <numeric>

#include "snapdial/error.hpp"

namespace snapdial {

namespace {

struct Hyp {
  std::vector<int> tokens;
  double sum = 0.0;
  CellState state;
};

struct Expansion {
  std::size_t parent;
  int token;
  double sum;
};

bool better_candidate(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.sum_log_prob != b.sum_log_prob) return a.sum_log_prob > b.sum_log_prob;
  return a.tokens < b.tokens;
}

Candidate make_candidate(std::vector<int> tokens, double sum, bool truncated) {
  Candidate c;
  c.score = sum / static_cast<double>(tokens.size());
  c.tokens = std::move(tokens);
  c.sum_log_prob = sum;
  c.truncated = truncated;
  return c;
}

}  // namespace

std::vector<Candidate> beam_search(const Model& model, const Conditioning& cond,
                                   const BeamOptions& options) {
  if (options.width == 0 || options.n_candidates == 0 || options.max_len == 0) {
    throw ConfigError("beam width, candidate count and max length must be positive");
  }
  const auto vocab = static_cast<int>(model.vocab_size());
  if (options.eos < 0 || options.eos >= vocab) {
    throw ConfigError("end-of-sentence id outside the vocabulary");
  }
  std::vector<Hyp> beam(1);
  beam[0].state = CellState::zeros(model.config().hidden);
  std::vector<Candidate> pool;
  std::vector<Expansion> expansions;
  std::vector<StepResult> results;
  for (std::size_t len = 1; len <= options.max_len && !beam.empty(); ++len) {
    expansions.clear();
    results.clear();
    for (std::size_t b = 0; b < beam.size(); ++b) {
      const int input = beam[b].tokens.empty() ? model.bos_id() : beam[b].tokens.back();
      results.push_back(model.step(cond, input, beam[b].state));
      const Vec& lp = results.back().log_probs;
      for (int v = 0; v < vocab; ++v) {
        expansions.push_back({b, v, beam[b].sum + lp[static_cast<std::size_t>(v)]});
      }
    }
    const std::size_t keep = std::min(options.width, expansions.size());
    std::partial_sort(expansions.begin(), expansions.begin() + static_cast<long>(keep),
                      expansions.end(), [](const Expansion& a, const Expansion& b) {
                        if (a.sum != b.sum) return a.sum > b.sum;
                        if (a.parent != b.parent) return a.parent < b.parent;
                        return a.token < b.token;
                      });
    std::vector<Hyp> next;
    bool pool_full = false;
    for (std::size_t k = 0; k < keep && !pool_full; ++k) {
      const Expansion& e = expansions[k];
      std::vector<int> tokens = beam[e.parent].tokens;
      tokens.push_back(e.token);
      if (e.token == options.eos) {
        const bool dup = std::any_of(pool.begin(), pool.end(),
                                     [&](const Candidate& c) { return c.tokens == tokens; });
        if (!dup) pool.push_back(make_candidate(std::move(tokens), e.sum, false));
        pool_full = pool.size() >= options.n_candidates;
      } else {
        next.push_back({std::move(tokens), e.sum, results[e.parent].state});
      }
    }
    if (pool_full) {
      beam.clear();
      break;
    }
    beam = std::move(next);
  }
  if (pool.empty()) {
    std::vector<Candidate> unfinished;
    for (auto& h : beam) unfinished.push_back(make_candidate(h.tokens, h.sum, true));
    std::sort(unfinished.begin(), unfinished.end(), better_candidate);
    if (!unfinished.empty()) pool.push_back(unfinished.front());
  }
  std::sort(pool.begin(), pool.end(), better_candidate);
  return pool;
}

Candidate greedy_decode(const Model& model, const Conditioning& cond,
                        const BeamOptions& options) {
  CellState state = CellState::zeros(model.config().hidden);
  std::vector<int> tokens;
  double sum = 0.0;
  int input = model.bos_id();
  for (std::size_t len = 0; len < options.max_len; ++len) {
    StepResult r = model.step(cond, input, state);
    const auto best = static_cast<int>(
        std::max_element(r.log_probs.begin(), r.log_probs.end()) - r.log_probs.begin());
    sum += r.log_probs[static_cast<std::size_t>(best)];
    tokens.push_back(best);
    if (best == options.eos) return make_candidate(std::move(tokens), sum, false);
    state = std::move(r.state);
    input = best;
  }
  return make_candidate(std::move(tokens), sum, true);
}

double sequence_score(const Model& model, const Conditioning& cond,
                      const std::vector<int>& tokens) {
  if (tokens.empty()) throw DimensionError("cannot score an empty sequence");
  CellState state = CellState::zeros(model.config().hidden);
  double sum = 0.0;
  int input = model.bos_id();
  for (int t : tokens) {
    StepResult r = model.step(cond, input, state);
    sum += r.log_probs.at(static_cast<std::size_t>(t));
    state = std::move(r.state);
    input = t;
  }
  return sum / static_cast<double>(tokens.size());
}

}  // namespace snapdial
