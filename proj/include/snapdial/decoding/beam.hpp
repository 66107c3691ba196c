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

#include <vector>

#include "snapdial/model/model.hpp"

namespace snapdial {

struct BeamOptions {
  std::size_t width = 10;
  std::size_t n_candidates = 5;
  std::size_t max_len = 30;
  int eos = 3;
};

struct Candidate {
  std::vector<int> tokens;  // including the final end-of-sentence token
  double sum_log_prob = 0.0;
  double score = 0.0;       // sum_log_prob / tokens.size()
  bool truncated = false;   // no end-of-sentence within max_len
};

// Beam search over the model's output distribution. Hypotheses that emit
// the end-of-sentence token leave the beam for the candidate pool
// (duplicates collapse); the search ends when the pool holds n_candidates,
// the beam is empty or max_len tokens were generated. Candidates are
// ranked by average log-probability. When nothing finished, the best
// unfinished hypothesis is returned flagged as truncated.
std::vector<Candidate> beam_search(const Model& model, const Conditioning& cond,
                                   const BeamOptions& options = {});

// Token-by-token argmax until end-of-sentence or max_len.
Candidate greedy_decode(const Model& model, const Conditioning& cond,
                        const BeamOptions& options = {});

// Average log-probability of a fixed token sequence under teacher forcing.
double sequence_score(const Model& model, const Conditioning& cond,
                      const std::vector<int>& tokens);

}  // namespace snapdial
