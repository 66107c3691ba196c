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

#include "snapdial/decoder/decoder.hpp"

#include <algorithm>
#include <cmath>

#include "snapdial/error.hpp"
#include "snapdial/numerics/ops.hpp"
#include "snapdial/numerics/vec.hpp"

namespace snapdial {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kLm: return "lm";
    case Variant::kMem: return "mem";
    case Variant::kHybrid: return "hybrid";
  }
  return "lm";
}

Variant variant_from_string(const std::string& text) {
  if (text == "lm") return Variant::kLm;
  if (text == "mem") return Variant::kMem;
  if (text == "hybrid") return Variant::kHybrid;
  throw ConfigError("variant must be lm, mem or hybrid, got '" + text + "'");
}

CellState cell_step(Variant variant, const Tensor& w, const Tensor* wc, const Vec& m,
                    const Vec& x, const CellState& prev, CellCache* cache) {
  const std::size_t n = prev.h.size();
  if (m.size() != n || x.size() != n || prev.c.size() != n || w.rows() != 4 * n ||
      w.cols() != 3 * n) {
    throw DimensionError("cell inputs do not match a " + std::to_string(n) +
                         "-unit cell with W " + shape_string(w.shape()));
  }
  const bool lm = variant == Variant::kLm;
  if (!lm && (wc == nullptr || wc->rows() != n || wc->cols() != 2 * n)) {
    throw DimensionError("mem/hybrid cells need W_c of shape [n x 2n]");
  }
  Vec in(3 * n);
  std::copy(m.begin(), m.end(), in.begin());
  std::copy(x.begin(), x.end(), in.begin() + static_cast<long>(n));
  std::copy(prev.h.begin(), prev.h.end(), in.begin() + static_cast<long>(2 * n));
  Vec a(4 * n, 0.0);
  vec::gemv(w, in.data(), a.data());
  Vec g(n, 0.0);
  if (lm) {
    for (std::size_t k = 0; k < 3 * n; ++k) a[k] = sigmoid(a[k]);
    for (std::size_t k = 3 * n; k < 4 * n; ++k) a[k] = tanh_clamped(a[k]);
    std::copy(a.begin() + static_cast<long>(3 * n), a.end(), g.begin());
  } else {
    for (double& v : a) v = sigmoid(v);
    vec::gemv(*wc, in.data() + n, g.data());
    for (double& v : g) v = tanh_clamped(v);
  }
  CellState next{Vec(n), Vec(n)};
  Vec tc(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double i = a[k], f = a[n + k], o = a[2 * n + k];
    double c = f * prev.c[k] + i * g[k];
    if (variant == Variant::kMem) c += a[3 * n + k] * m[k];
    tc[k] = std::tanh(c);
    next.c[k] = c;
    next.h[k] = o * tc[k];
    if (variant == Variant::kHybrid) next.h[k] += a[3 * n + k] * m[k];
  }
  if (cache) {
    cache->in = std::move(in);
    cache->gates = std::move(a);
    cache->g = lm ? Vec() : std::move(g);
    cache->c_prev = prev.c;
    cache->c = next.c;
    cache->tc = std::move(tc);
    cache->h = next.h;
  }
  return next;
}

void cell_backward(Variant variant, const Tensor& w, const Tensor* wc, const CellCache& cache,
                   const Vec& dh, const Vec& dc_in, Tensor& dw, Tensor* dwc, Vec& dm, Vec& dx,
                   Vec& dh_prev, Vec& dc_prev) {
  const std::size_t n = dh.size();
  const bool lm = variant == Variant::kLm;
  const Vec& a = cache.gates;
  const double* m = cache.in.data();
  Vec da(4 * n);
  Vec dg(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double i = a[k], f = a[n + k], o = a[2 * n + k];
    const double g = lm ? a[3 * n + k] : cache.g[k];
    const double tc = cache.tc[k];
    const double dc = dc_in[k] + dh[k] * o * (1.0 - tc * tc);
    da[k] = dc * g * i * (1.0 - i);
    da[n + k] = dc * cache.c_prev[k] * f * (1.0 - f);
    da[2 * n + k] = dh[k] * tc * o * (1.0 - o);
    dc_prev[k] += dc * f;
    if (lm) {
      da[3 * n + k] = dc * i * (1.0 - g * g);
    } else {
      const double r = a[3 * n + k];
      const double dr = variant == Variant::kMem ? dc * m[k] : dh[k] * m[k];
      dm[k] += variant == Variant::kMem ? dc * r : dh[k] * r;
      da[3 * n + k] = dr * r * (1.0 - r);
      dg[k] = dc * i * (1.0 - g * g);
    }
  }
  vec::ger(dw, da.data(), cache.in.data());
  Vec din(3 * n, 0.0);
  vec::gemv_t(w, da.data(), din.data());
  if (!lm) {
    vec::ger(*dwc, dg.data(), cache.in.data() + n);
    vec::gemv_t(*wc, dg.data(), din.data() + n);
  }
  for (std::size_t k = 0; k < n; ++k) {
    dm[k] += din[k];
    dx[k] += din[n + k];
    dh_prev[k] += din[2 * n + k];
  }
}

Decoder::Decoder(Variant variant, std::size_t vocab_size, std::size_t hidden)
    : emb("decoder.emb", Shape{vocab_size, hidden}),
      w("decoder.w", Shape{4 * hidden, 3 * hidden}),
      w_out("output.w", Shape{vocab_size, hidden}),
      b_out("output.b", Shape{vocab_size}),
      variant_(variant),
      hidden_(hidden) {
  if (variant != Variant::kLm) w_c = Parameter("decoder.w_c", Shape{hidden, 2 * hidden});
}

Vec Decoder::embedding(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= emb.value.rows()) {
    throw DimensionError("token id " + std::to_string(id) + " outside the decoder vocabulary");
  }
  const auto row = emb.value.row(static_cast<std::size_t>(id));
  return Vec(row.begin(), row.end());
}

Vec Decoder::output_dist(const Vec& h) const {
  Vec logits(b_out.value.values());
  vec::gemv(w_out.value, h.data(), logits.data());
  softmax_inplace(logits);
  return logits;
}

Vec Decoder::output_log_dist(const Vec& h) const {
  Vec logits(b_out.value.values());
  vec::gemv(w_out.value, h.data(), logits.data());
  const double lse = log_sum_exp(logits);
  for (double& v : logits) v -= lse;
  return logits;
}

std::vector<Parameter*> Decoder::parameters() {
  std::vector<Parameter*> out = {&emb, &w};
  if (variant_ != Variant::kLm) out.push_back(&w_c);
  out.push_back(&w_out);
  out.push_back(&b_out);
  return out;
}

}  // namespace snapdial
