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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "snapdial/corpus/ontology.hpp"
#include "snapdial/numerics/rng.hpp"
#include "snapdial/numerics/tensor.hpp"
#include "snapdial/tracker/tracker.hpp"

namespace snapdial {

using Vec = std::vector<double>;

// ---------------------------------------------------------------------------
// Intent network: standard LSTM over the delexicalised user turn. Gate rows
// of W are ordered (i, f, o, g) over the input [embedding ; h_prev].

struct IntentCache {
  std::vector<int> ids;
  std::vector<Vec> x;      // embeddings per step
  std::vector<Vec> gates;  // activated (i, f, o, g), 4n per step
  std::vector<Vec> c;      // c[0] = 0, c[t+1] after step t
  std::vector<Vec> h;
  std::vector<Vec> tc;     // tanh(c[t+1])
};

class IntentNet {
 public:
  IntentNet() = default;
  IntentNet(std::size_t vocab_size, std::size_t hidden);

  std::size_t hidden() const { return hidden_; }

  // Last hidden state. An empty id list encodes a single end-of-sentence
  // token.
  Vec encode(const std::vector<int>& ids, IntentCache* cache = nullptr) const;
  void backward(const IntentCache& cache, const Vec& dz);

  std::vector<Parameter*> parameters() { return {&emb, &w, &b}; }

  Parameter emb;  // [V x n]
  Parameter w;    // [4n x 2n]
  Parameter b;    // [4n]

 private:
  std::size_t hidden_ = 0;
};

// ---------------------------------------------------------------------------
// Database operator.

inline constexpr std::size_t kMatchBins = 6;
using MatchVector = std::array<double, kMatchBins>;

// {0, 1, 2, 3, 4, >=5}
std::size_t match_bin(std::size_t count);
MatchVector match_vector(std::size_t count);

// Argmax class per informable slot (ties towards the earlier class);
// dontcare and none leave the slot unconstrained.
Constraints belief_constraints(const BeliefState& belief, const Ontology& ontology);

struct DbResult {
  MatchVector x{};
  std::size_t bin = 0;
  std::vector<const Entity*> matches;
  const Entity* pointer = nullptr;
};

// The pointer is kept while it still matches, otherwise drawn uniformly
// from the matches with `rng` (which is only advanced in that case).
DbResult db_query(const BeliefState& belief, const Ontology& ontology,
                  const Database& database, Rng& rng, const Entity* previous);

// ---------------------------------------------------------------------------
// Policy network.

struct PolicyInput {
  Vec z;
  MatchVector x{};
  std::vector<Vec> beliefs;  // per tracker slot, tracker order
};

// Per-turn quantities shared by every attentive step.
struct AttentionContext {
  Vec v;                  // z + P_x x
  Vec base;               // W_zm z + W_xm x
  std::vector<Vec> q;     // W_pm^s p^s
  std::vector<Vec> key;   // W_rv v + W_rp^s p^s
};

struct AttentionStep {
  std::vector<Vec> u;  // tanh(key_s + W_rw w + W_rh h_prev)
  Vec alpha;
  Vec m;
};

// Gradients w.r.t. the per-turn context, summed over steps.
struct AttentionContextGrad {
  Vec base;
  std::vector<Vec> q;
  std::vector<Vec> key;
};

class PolicyNet {
 public:
  PolicyNet() = default;
  PolicyNet(std::size_t hidden, const std::vector<std::string>& slot_names,
            const std::vector<std::size_t>& belief_dims, bool attention);

  std::size_t hidden() const { return hidden_; }
  std::size_t slots() const { return w_pm.size(); }
  bool attention() const { return attention_; }

  // m = tanh(W_zm z + W_xm x + sum_s W_pm^s p^s)
  Vec policy(const PolicyInput& in) const;
  void policy_backward(const PolicyInput& in, const Vec& m, const Vec& dm, Vec& dz);

  AttentionContext context(const PolicyInput& in) const;
  // score_s = r . tanh(W_rv v + W_rp^s p^s + W_rw w + W_rh h_prev),
  // alpha = softmax(score), m = tanh(base + sum_s alpha_s q_s)
  AttentionStep attend(const AttentionContext& ctx, const Vec& w, const Vec& h_prev) const;
  void attend_backward(const AttentionContext& ctx, const AttentionStep& step, const Vec& w,
                       const Vec& h_prev, const Vec& dm, AttentionContextGrad& dctx,
                       Vec& dw, Vec& dh_prev);
  AttentionContextGrad zero_context_grad() const;
  void context_backward(const PolicyInput& in, const AttentionContextGrad& dctx, Vec& dz);

  std::vector<Parameter*> parameters();

  Parameter w_zm;                // [n x n]
  Parameter w_xm;                // [n x 6]
  std::vector<Parameter> w_pm;   // [n x dim_s]
  // attention only
  Parameter p_x;                 // [n x 6]
  Parameter w_rv;                // [n x n]
  std::vector<Parameter> w_rp;   // [n x dim_s]
  Parameter w_rw;                // [n x n]
  Parameter w_rh;                // [n x n]
  Parameter r;                   // [n]

 private:
  std::size_t hidden_ = 0;
  bool attention_ = false;
};

}  // namespace snapdial
