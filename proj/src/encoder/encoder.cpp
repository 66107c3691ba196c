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

#include "snapdial/encoder/encoder.hpp"

#include <algorithm>
#include <cmath>

#include "snapdial/corpus/vocab.hpp"
#include "snapdial/error.hpp"
#include "snapdial/numerics/ops.hpp"
#include "snapdial/numerics/vec.hpp"

namespace snapdial {

IntentNet::IntentNet(std::size_t vocab_size, std::size_t hidden)
    : emb("intent.emb", Shape{vocab_size, hidden}),
      w("intent.w", Shape{4 * hidden, 2 * hidden}),
      b("intent.b", Shape{4 * hidden}),
      hidden_(hidden) {}

Vec IntentNet::encode(const std::vector<int>& ids_in, IntentCache* cache) const {
  const std::size_t n = hidden_;
  std::vector<int> ids = ids_in;
  if (ids.empty()) ids.push_back(Vocabulary::kEos);
  Vec c(n, 0.0), h(n, 0.0);
  if (cache) {
    *cache = {};
    cache->ids = ids;
    cache->c.push_back(c);
    cache->h.push_back(h);
  }
  Vec in(2 * n);
  Vec a(4 * n);
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= emb.value.rows()) {
      throw DimensionError("token id " + std::to_string(id) + " outside the intent vocabulary");
    }
    const auto e = emb.value.row(static_cast<std::size_t>(id));
    std::copy(e.begin(), e.end(), in.begin());
    std::copy(h.begin(), h.end(), in.begin() + static_cast<long>(n));
    std::copy(b.value.data().begin(), b.value.data().end(), a.begin());
    vec::gemv(w.value, in.data(), a.data());
    for (std::size_t k = 0; k < 3 * n; ++k) a[k] = sigmoid(a[k]);
    for (std::size_t k = 3 * n; k < 4 * n; ++k) a[k] = tanh_clamped(a[k]);
    Vec tc(n);
    for (std::size_t k = 0; k < n; ++k) {
      c[k] = a[n + k] * c[k] + a[k] * a[3 * n + k];
      tc[k] = std::tanh(c[k]);
      h[k] = a[2 * n + k] * tc[k];
    }
    if (cache) {
      cache->x.emplace_back(e.begin(), e.end());
      cache->gates.push_back(a);
      cache->c.push_back(c);
      cache->h.push_back(h);
      cache->tc.push_back(std::move(tc));
    }
  }
  return h;
}

void IntentNet::backward(const IntentCache& cache, const Vec& dz) {
  const std::size_t n = hidden_;
  Vec dh = dz;
  Vec dc(n, 0.0);
  Vec in(2 * n), da(4 * n), din(2 * n);
  for (std::size_t t = cache.gates.size(); t-- > 0;) {
    const Vec& a = cache.gates[t];
    const Vec& c_prev = cache.c[t];
    const Vec& tc = cache.tc[t];
    for (std::size_t k = 0; k < n; ++k) {
      const double i = a[k], f = a[n + k], o = a[2 * n + k], g = a[3 * n + k];
      const double dct = dc[k] + dh[k] * o * (1.0 - tc[k] * tc[k]);
      da[k] = dct * g * i * (1.0 - i);
      da[n + k] = dct * c_prev[k] * f * (1.0 - f);
      da[2 * n + k] = dh[k] * tc[k] * o * (1.0 - o);
      da[3 * n + k] = dct * i * (1.0 - g * g);
      dc[k] = dct * f;
    }
    std::copy(cache.x[t].begin(), cache.x[t].end(), in.begin());
    std::copy(cache.h[t].begin(), cache.h[t].end(), in.begin() + static_cast<long>(n));
    vec::ger(w.grad, da.data(), in.data());
    kernels::axpy(1.0, da.data(), b.grad.data().data(), 4 * n);
    std::fill(din.begin(), din.end(), 0.0);
    vec::gemv_t(w.value, da.data(), din.data());
    auto de = emb.grad.row(static_cast<std::size_t>(cache.ids[t]));
    kernels::axpy(1.0, din.data(), de.data(), n);
    std::copy(din.begin() + static_cast<long>(n), din.end(), dh.begin());
  }
}

// ---------------------------------------------------------------------------

std::size_t match_bin(std::size_t count) { return std::min<std::size_t>(count, 5); }

MatchVector match_vector(std::size_t count) {
  MatchVector x{};
  x[match_bin(count)] = 1.0;
  return x;
}

Constraints belief_constraints(const BeliefState& belief, const Ontology& ontology) {
  Constraints out;
  for (const auto& slot : ontology.informable) {
    const auto& p = belief.informable.at(slot.name);
    const std::size_t k =
        static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    if (k < slot.values.size()) {
      out[slot.name] = slot.values[k];
    } else {
      out[slot.name] = std::nullopt;
    }
  }
  return out;
}

DbResult db_query(const BeliefState& belief, const Ontology& ontology,
                  const Database& database, Rng& rng, const Entity* previous) {
  DbResult res;
  res.matches = database.matches(belief_constraints(belief, ontology));
  res.bin = match_bin(res.matches.size());
  res.x = match_vector(res.matches.size());
  if (res.matches.empty()) return res;
  if (previous != nullptr &&
      std::find(res.matches.begin(), res.matches.end(), previous) != res.matches.end()) {
    res.pointer = previous;
  } else {
    res.pointer = res.matches[rng.below(res.matches.size())];
  }
  return res;
}

// ---------------------------------------------------------------------------

PolicyNet::PolicyNet(std::size_t hidden, const std::vector<std::string>& slot_names,
                     const std::vector<std::size_t>& belief_dims, bool attention)
    : w_zm("policy.w_zm", Shape{hidden, hidden}),
      w_xm("policy.w_xm", Shape{hidden, kMatchBins}),
      hidden_(hidden),
      attention_(attention) {
  if (slot_names.size() != belief_dims.size()) {
    throw DimensionError("one belief dimension per tracker slot required");
  }
  for (std::size_t s = 0; s < belief_dims.size(); ++s) {
    w_pm.emplace_back("policy.w_pm." + std::to_string(s) + "." + slot_names[s], Shape{hidden, belief_dims[s]});
  }
  if (attention) {
    p_x = Parameter("attention.p_x", Shape{hidden, kMatchBins});
    w_rv = Parameter("attention.w_rv", Shape{hidden, hidden});
    for (std::size_t s = 0; s < belief_dims.size(); ++s) {
      w_rp.emplace_back("attention.w_rp." + std::to_string(s) + "." + slot_names[s], Shape{hidden, belief_dims[s]});
    }
    w_rw = Parameter("attention.w_rw", Shape{hidden, hidden});
    w_rh = Parameter("attention.w_rh", Shape{hidden, hidden});
    r = Parameter("attention.r", Shape{hidden});
  }
}

namespace {

void check_input(const PolicyInput& in, const PolicyNet& net) {
  if (in.z.size() != net.hidden()) {
    throw DimensionError("intent vector has " + std::to_string(in.z.size()) +
                         " entries, policy expects " + std::to_string(net.hidden()));
  }
  if (in.beliefs.size() != net.slots()) {
    throw DimensionError("policy expects " + std::to_string(net.slots()) +
                         " belief vectors, got " + std::to_string(in.beliefs.size()));
  }
  for (std::size_t s = 0; s < in.beliefs.size(); ++s) {
    if (in.beliefs[s].size() != net.w_pm[s].value.cols()) {
      throw DimensionError("belief vector " + std::to_string(s) + " has " +
                           std::to_string(in.beliefs[s].size()) + " entries, expected " +
                           std::to_string(net.w_pm[s].value.cols()));
    }
  }
}

}  // namespace

Vec PolicyNet::policy(const PolicyInput& in) const {
  check_input(in, *this);
  Vec pre(hidden_, 0.0);
  vec::gemv(w_zm.value, in.z.data(), pre.data());
  vec::gemv(w_xm.value, in.x.data(), pre.data());
  for (std::size_t s = 0; s < w_pm.size(); ++s) {
    vec::gemv(w_pm[s].value, in.beliefs[s].data(), pre.data());
  }
  for (double& v : pre) v = tanh_clamped(v);
  return pre;
}

void PolicyNet::policy_backward(const PolicyInput& in, const Vec& m, const Vec& dm, Vec& dz) {
  Vec dpre(hidden_);
  for (std::size_t k = 0; k < hidden_; ++k) dpre[k] = dm[k] * (1.0 - m[k] * m[k]);
  vec::ger(w_zm.grad, dpre.data(), in.z.data());
  vec::gemv_t(w_zm.value, dpre.data(), dz.data());
  vec::ger(w_xm.grad, dpre.data(), in.x.data());
  for (std::size_t s = 0; s < w_pm.size(); ++s) {
    vec::ger(w_pm[s].grad, dpre.data(), in.beliefs[s].data());
  }
}

AttentionContext PolicyNet::context(const PolicyInput& in) const {
  if (!attention_) throw UnsupportedConfigError("policy was built without attention");
  check_input(in, *this);
  AttentionContext ctx;
  ctx.v = in.z;
  vec::gemv(p_x.value, in.x.data(), ctx.v.data());
  ctx.base.assign(hidden_, 0.0);
  vec::gemv(w_zm.value, in.z.data(), ctx.base.data());
  vec::gemv(w_xm.value, in.x.data(), ctx.base.data());
  Vec kv(hidden_, 0.0);
  vec::gemv(w_rv.value, ctx.v.data(), kv.data());
  for (std::size_t s = 0; s < w_pm.size(); ++s) {
    Vec q(hidden_, 0.0);
    vec::gemv(w_pm[s].value, in.beliefs[s].data(), q.data());
    ctx.q.push_back(std::move(q));
    Vec key = kv;
    vec::gemv(w_rp[s].value, in.beliefs[s].data(), key.data());
    ctx.key.push_back(std::move(key));
  }
  return ctx;
}

AttentionStep PolicyNet::attend(const AttentionContext& ctx, const Vec& w,
                                const Vec& h_prev) const {
  const std::size_t n = hidden_;
  if (w.size() != n || h_prev.size() != n) {
    throw DimensionError("attention inputs must have " + std::to_string(n) + " entries");
  }
  AttentionStep st;
  Vec kw(n, 0.0);
  vec::gemv(w_rw.value, w.data(), kw.data());
  vec::gemv(w_rh.value, h_prev.data(), kw.data());
  const std::size_t slots = ctx.key.size();
  st.alpha.resize(slots);
  for (std::size_t s = 0; s < slots; ++s) {
    Vec u(n);
    for (std::size_t k = 0; k < n; ++k) u[k] = tanh_clamped(ctx.key[s][k] + kw[k]);
    st.alpha[s] = kernels::dot(r.value.data().data(), u.data(), n);
    st.u.push_back(std::move(u));
  }
  softmax_inplace(st.alpha);
  st.m = ctx.base;
  for (std::size_t s = 0; s < slots; ++s) vec::axpy(st.alpha[s], ctx.q[s], st.m);
  for (double& v : st.m) v = tanh_clamped(v);
  return st;
}

AttentionContextGrad PolicyNet::zero_context_grad() const {
  AttentionContextGrad g;
  g.base.assign(hidden_, 0.0);
  g.q.assign(w_pm.size(), Vec(hidden_, 0.0));
  g.key.assign(w_pm.size(), Vec(hidden_, 0.0));
  return g;
}

void PolicyNet::attend_backward(const AttentionContext& ctx, const AttentionStep& st,
                                const Vec& w, const Vec& h_prev, const Vec& dm,
                                AttentionContextGrad& dctx, Vec& dw, Vec& dh_prev) {
  const std::size_t n = hidden_;
  const std::size_t slots = st.alpha.size();
  Vec dpre(n);
  for (std::size_t k = 0; k < n; ++k) dpre[k] = dm[k] * (1.0 - st.m[k] * st.m[k]);
  vec::axpy(1.0, dpre, dctx.base);
  Vec dalpha(slots);
  double weighted = 0.0;
  for (std::size_t s = 0; s < slots; ++s) {
    dalpha[s] = vec::dot(ctx.q[s], dpre);
    vec::axpy(st.alpha[s], dpre, dctx.q[s]);
    weighted += st.alpha[s] * dalpha[s];
  }
  Vec dkw(n, 0.0);
  Vec du(n);
  for (std::size_t s = 0; s < slots; ++s) {
    const double dscore = st.alpha[s] * (dalpha[s] - weighted);
    kernels::axpy(dscore, st.u[s].data(), r.grad.data().data(), n);
    for (std::size_t k = 0; k < n; ++k) {
      du[k] = dscore * r.value[k] * (1.0 - st.u[s][k] * st.u[s][k]);
    }
    vec::axpy(1.0, du, dctx.key[s]);
    vec::axpy(1.0, du, dkw);
  }
  vec::ger(w_rw.grad, dkw.data(), w.data());
  vec::gemv_t(w_rw.value, dkw.data(), dw.data());
  vec::ger(w_rh.grad, dkw.data(), h_prev.data());
  vec::gemv_t(w_rh.value, dkw.data(), dh_prev.data());
}

void PolicyNet::context_backward(const PolicyInput& in, const AttentionContextGrad& dctx,
                                 Vec& dz) {
  vec::ger(w_zm.grad, dctx.base.data(), in.z.data());
  vec::gemv_t(w_zm.value, dctx.base.data(), dz.data());
  vec::ger(w_xm.grad, dctx.base.data(), in.x.data());
  Vec dkey_sum(hidden_, 0.0);
  for (std::size_t s = 0; s < w_pm.size(); ++s) {
    vec::ger(w_pm[s].grad, dctx.q[s].data(), in.beliefs[s].data());
    vec::ger(w_rp[s].grad, dctx.key[s].data(), in.beliefs[s].data());
    vec::axpy(1.0, dctx.key[s], dkey_sum);
  }
  // key_s = W_rv v + W_rp^s p^s with v = z + P_x x
  Vec v = in.z;
  vec::gemv(p_x.value, in.x.data(), v.data());
  vec::ger(w_rv.grad, dkey_sum.data(), v.data());
  Vec dv(hidden_, 0.0);
  vec::gemv_t(w_rv.value, dkey_sum.data(), dv.data());
  vec::axpy(1.0, dv, dz);
  vec::ger(p_x.grad, dv.data(), in.x.data());
}

std::vector<Parameter*> PolicyNet::parameters() {
  std::vector<Parameter*> out = {&w_zm, &w_xm};
  for (auto& p : w_pm) out.push_back(&p);
  if (attention_) {
    out.push_back(&p_x);
    out.push_back(&w_rv);
    for (auto& p : w_rp) out.push_back(&p);
    out.push_back(&w_rw);
    out.push_back(&w_rh);
    out.push_back(&r);
  }
  return out;
}

}  // namespace snapdial
