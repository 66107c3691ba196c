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

#include <string>
#include <vector>

#include "snapdial/encoder/encoder.hpp"
#include "snapdial/numerics/tensor.hpp"

namespace snapdial {

enum class Variant { kLm, kMem, kHybrid };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& text);

struct CellState {
  Vec h;
  Vec c;

  static CellState zeros(std::size_t n) { return {Vec(n, 0.0), Vec(n, 0.0)}; }
};

// Everything a backward pass (and the gate statistics) needs from one step.
struct CellCache {
  Vec in;     // [m ; w ; h_prev]
  Vec gates;  // activated rows of W: (i, f, o, g) for lm, (i, f, o, r) otherwise
  Vec g;      // mem/hybrid: tanh(W_c [w ; h_prev])
  Vec c_prev;
  Vec c;
  Vec tc;     // tanh(c)
  Vec h;
};

// One conditional LSTM step.
//   lm:     (i, f, o, g) = (s, s, s, tanh)(W [m; w; h]); c' = f c + i g;       h' = o tanh(c')
//   mem:    (i, f, o, r) = s(W [m; w; h]); g = tanh(W_c [w; h]);
//           c' = f c + i g + r m;                                           h' = o tanh(c')
//   hybrid: gates as mem; c' = f c + i g;                                   h' = o tanh(c') + r m
// `wc` is ignored (and may be null) for lm. Throws DimensionError on shape
// mismatch.
CellState cell_step(Variant variant, const Tensor& w, const Tensor* wc, const Vec& m,
                    const Vec& x, const CellState& prev, CellCache* cache = nullptr);

// Accumulates parameter gradients into dw / dwc and input gradients into
// dm, dx, dh_prev and dc_prev (all +=).
void cell_backward(Variant variant, const Tensor& w, const Tensor* wc, const CellCache& cache,
                   const Vec& dh, const Vec& dc, Tensor& dw, Tensor* dwc, Vec& dm, Vec& dx,
                   Vec& dh_prev, Vec& dc_prev);

// Decoder parameters: word embeddings, the cell and the softmax head.
class Decoder {
 public:
  Decoder() = default;
  Decoder(Variant variant, std::size_t vocab_size, std::size_t hidden);

  Variant variant() const { return variant_; }
  std::size_t hidden() const { return hidden_; }
  std::size_t vocab_size() const { return w_out.value.rows(); }

  const Tensor* wc_value() const { return variant_ == Variant::kLm ? nullptr : &w_c.value; }
  Tensor* wc_grad() { return variant_ == Variant::kLm ? nullptr : &w_c.grad; }

  Vec embedding(int id) const;

  // softmax(W_out h + b_out)
  Vec output_dist(const Vec& h) const;
  // log-probabilities via log-sum-exp
  Vec output_log_dist(const Vec& h) const;

  std::vector<Parameter*> parameters();

  Parameter emb;    // [V x n]
  Parameter w;      // [4n x 3n]
  Parameter w_c;    // [n x 2n], mem/hybrid only
  Parameter w_out;  // [V x n]
  Parameter b_out;  // [V]

 private:
  Variant variant_ = Variant::kLm;
  std::size_t hidden_ = 0;
};

}  // namespace snapdial
