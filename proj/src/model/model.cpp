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

#include "snapdial/model/model.hpp"

#include <algorithm>
#include <cmath>

#include "snapdial/error.hpp"
#include "snapdial/numerics/ops.hpp"
#include "snapdial/numerics/vec.hpp"

namespace snapdial {

namespace {

constexpr int kModelFormatVersion = 1;
const double kLogClamp = std::log(kCrossEntropyClamp);

}  // namespace

std::string ModelConfig::label() const {
  std::string out = to_string(variant);
  if (attention) out += "+att";
  out += "/" + to_string(belief);
  out += snapshot ? "/snap" : "/nosnap";
  return out;
}

Json ModelConfig::to_json() const {
  Json j;
  j["variant"] = to_string(variant);
  j["attention"] = attention;
  j["snapshot"] = snapshot;
  j["belief"] = to_string(belief);
  j["hidden"] = hidden;
  j["lambda"] = lambda;
  j["initRange"] = init_range;
  return j;
}

ModelConfig ModelConfig::from_json(const Json& json) {
  ModelConfig c;
  try {
    c.variant = variant_from_string(json.value("variant", std::string("lm")));
    c.attention = json.value("attention", false);
    c.snapshot = json.value("snapshot", false);
    c.belief = belief_from_string(json.value("belief", std::string("summary")));
    c.hidden = json.value("hidden", std::size_t{50});
    c.lambda = json.value("lambda", 1.0);
    c.init_range = json.value("initRange", 0.3);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad model config: ") + e.what());
  }
  return c;
}

std::vector<SlotSpec> slot_specs(const Ontology& ontology, BeliefRepresentation rep) {
  std::vector<SlotSpec> out;
  for (const auto& slot : ontology.tracker_slots()) {
    out.push_back({slot, belief_dim(ontology, slot, rep)});
  }
  return out;
}

Model::Model(ModelConfig config, std::size_t vocab_size, std::vector<SlotSpec> slots,
             IndicatorSpec indicators, int bos_id)
    : config_(config), slots_(std::move(slots)), indicators_(std::move(indicators)),
      bos_(bos_id) {
  const std::size_t n = config_.hidden;
  if (n == 0) throw ConfigError("hidden size must be positive");
  if (vocab_size < 2) throw ConfigError("vocabulary needs at least two tokens");
  if (config_.lambda < 0.0) throw ConfigError("snapshot weight must be non-negative");
  if (config_.snapshot && indicators_.size() >= n) {
    throw ConfigError("snapshot needs fewer indicators (" + std::to_string(indicators_.size()) +
                      ") than hidden units (" + std::to_string(n) + ")");
  }
  if (bos_id < 0 || static_cast<std::size_t>(bos_id) >= vocab_size) {
    throw ConfigError("beginning-of-sentence id outside the vocabulary");
  }
  std::vector<std::string> names;
  std::vector<std::size_t> dims;
  for (const auto& s : slots_) {
    names.push_back(s.name);
    dims.push_back(s.dim);
  }
  intent_ = IntentNet(vocab_size, n);
  policy_ = PolicyNet(n, names, dims, config_.attention);
  decoder_ = Decoder(config_.variant, vocab_size, n);
}

void Model::initialize(Rng& rng) {
  for (Parameter* p : parameters()) {
    rng.fill_uniform(p->value.data(), -config_.init_range, config_.init_range);
    p->zero_grad();
  }
}

std::vector<Parameter*> Model::parameters() {
  std::vector<Parameter*> out = intent_.parameters();
  for (Parameter* p : policy_.parameters()) out.push_back(p);
  for (Parameter* p : decoder_.parameters()) out.push_back(p);
  return out;
}

std::vector<const Parameter*> Model::parameters() const {
  auto list = const_cast<Model*>(this)->parameters();
  return {list.begin(), list.end()};
}

Conditioning Model::condition(const std::vector<int>& user, const MatchVector& x,
                              const std::vector<Vec>& beliefs) const {
  Conditioning cond;
  cond.input.z = intent_.encode(user);
  cond.input.x = x;
  cond.input.beliefs = beliefs;
  if (config_.attention) {
    cond.context = policy_.context(cond.input);
  } else {
    cond.m = policy_.policy(cond.input);
  }
  return cond;
}

StepResult Model::step(const Conditioning& cond, int input, const CellState& prev) const {
  StepResult out;
  const Vec w = decoder_.embedding(input);
  if (config_.attention) {
    AttentionStep st = policy_.attend(cond.context, w, prev.h);
    out.alpha = std::move(st.alpha);
    out.m = std::move(st.m);
  } else {
    out.m = cond.m;
  }
  CellCache cache;
  out.state = cell_step(config_.variant, decoder_.w.value, decoder_.wc_value(), out.m, w, prev,
                        &cache);
  out.gates = std::move(cache.gates);
  out.log_probs = decoder_.output_log_dist(out.state.h);
  return out;
}

std::vector<TeacherStep> Model::forward_teacher(const TurnExample& turn) const {
  const Conditioning cond = condition(turn.user, turn.x, turn.beliefs);
  CellState state = CellState::zeros(config_.hidden);
  std::vector<TeacherStep> out;
  int input = bos_;
  for (int target : turn.sys) {
    StepResult r = step(cond, input, state);
    TeacherStep s;
    s.input = input;
    s.target = target;
    s.log_prob = r.log_probs.at(static_cast<std::size_t>(target));
    s.gates = std::move(r.gates);
    s.alpha = std::move(r.alpha);
    s.m = std::move(r.m);
    out.push_back(std::move(s));
    state = std::move(r.state);
    input = target;
  }
  return out;
}

TurnLoss Model::turn_loss(const TurnExample& turn, bool backward) {
  const std::size_t n = config_.hidden;
  const std::size_t steps = turn.sys.size();
  if (steps == 0) throw DimensionError("turn has no target tokens");
  const bool snap = config_.snapshot;
  const std::size_t d = indicators_.size();
  if (snap && turn.snapshot.size() != steps) {
    throw AlignmentError("turn has " + std::to_string(steps) + " target tokens but " +
                         std::to_string(turn.snapshot.size()) + " snapshot rows");
  }

  IntentCache icache;
  PolicyInput in;
  in.z = intent_.encode(turn.user, backward ? &icache : nullptr);
  in.x = turn.x;
  in.beliefs = turn.beliefs;
  Vec m_fixed;
  AttentionContext ctx;
  if (config_.attention) {
    ctx = policy_.context(in);
  } else {
    m_fixed = policy_.policy(in);
  }

  std::vector<int> inputs(steps);
  std::vector<Vec> embeds(steps);
  std::vector<AttentionStep> att(config_.attention ? steps : 0);
  std::vector<CellCache> caches(steps);
  std::vector<Vec> probs(steps);
  std::vector<Vec> hprev(steps);
  std::vector<std::vector<double>> acts;
  TurnLoss loss;
  CellState state = CellState::zeros(n);
  int input = bos_;
  for (std::size_t j = 0; j < steps; ++j) {
    inputs[j] = input;
    embeds[j] = decoder_.embedding(input);
    const Vec* m = &m_fixed;
    if (config_.attention) {
      att[j] = policy_.attend(ctx, embeds[j], state.h);
      m = &att[j].m;
    }
    hprev[j] = state.h;
    state = cell_step(config_.variant, decoder_.w.value, decoder_.wc_value(), *m, embeds[j],
                      state, &caches[j]);
    Vec logp = decoder_.output_log_dist(state.h);
    const int target = turn.sys[j];
    if (target < 0 || static_cast<std::size_t>(target) >= logp.size()) {
      throw DimensionError("target id " + std::to_string(target) + " outside the vocabulary");
    }
    loss.token -= std::max(logp[static_cast<std::size_t>(target)], kLogClamp);
    if (snap) acts.emplace_back(m->begin(), m->begin() + static_cast<long>(d));
    if (backward) {
      for (double& v : logp) v = std::exp(v);
      probs[j] = std::move(logp);
    }
    input = target;
  }
  if (snap) loss.snapshot = snapshot_loss(acts, turn.snapshot);
  loss.total = loss.token + (snap ? config_.lambda * loss.snapshot : 0.0);
  if (!backward) return loss;

  std::vector<std::vector<double>> snap_grad;
  if (snap) snap_grad = snapshot_loss_grad(acts, turn.snapshot);
  Vec dh_next(n, 0.0), dc_next(n, 0.0), dm_total(n, 0.0), dz(n, 0.0);
  AttentionContextGrad dctx;
  if (config_.attention) dctx = policy_.zero_context_grad();
  Vec dh(n), dm(n), dx(n), dh_prev(n), dc_prev(n);
  for (std::size_t j = steps; j-- > 0;) {
    Vec& dlogits = probs[j];
    const auto target = static_cast<std::size_t>(turn.sys[j]);
    if (dlogits[target] >= kCrossEntropyClamp) {
      dlogits[target] -= 1.0;
    } else {
      std::fill(dlogits.begin(), dlogits.end(), 0.0);
    }
    const Vec& h = caches[j].h;
    vec::ger(decoder_.w_out.grad, dlogits.data(), h.data());
    kernels::axpy(1.0, dlogits.data(), decoder_.b_out.grad.data().data(), dlogits.size());
    dh = dh_next;
    vec::gemv_t(decoder_.w_out.value, dlogits.data(), dh.data());
    std::fill(dm.begin(), dm.end(), 0.0);
    std::fill(dx.begin(), dx.end(), 0.0);
    std::fill(dh_prev.begin(), dh_prev.end(), 0.0);
    std::fill(dc_prev.begin(), dc_prev.end(), 0.0);
    cell_backward(config_.variant, decoder_.w.value, decoder_.wc_value(), caches[j], dh,
                  dc_next, decoder_.w.grad, decoder_.wc_grad(), dm, dx, dh_prev, dc_prev);
    if (snap) {
      for (std::size_t k = 0; k < d; ++k) dm[k] += config_.lambda * snap_grad[j][k];
    }
    if (config_.attention) {
      policy_.attend_backward(ctx, att[j], embeds[j], hprev[j], dm, dctx, dx, dh_prev);
    } else {
      vec::axpy(1.0, dm, dm_total);
    }
    auto de = decoder_.emb.grad.row(static_cast<std::size_t>(inputs[j]));
    kernels::axpy(1.0, dx.data(), de.data(), n);
    dh_next.swap(dh_prev);
    dc_next.swap(dc_prev);
  }
  if (config_.attention) {
    policy_.context_backward(in, dctx, dz);
  } else {
    policy_.policy_backward(in, m_fixed, dm_total, dz);
  }
  intent_.backward(icache, dz);
  return loss;
}

Json Model::to_json() const {
  Json j;
  j["version"] = kModelFormatVersion;
  j["config"] = config_.to_json();
  j["vocabSize"] = vocab_size();
  j["bos"] = bos_;
  Json slots = Json::array();
  for (const auto& s : slots_) slots.push_back({{"name", s.name}, {"dim", s.dim}});
  j["slots"] = std::move(slots);
  j["indicatorSpec"] = indicators_.to_json();
  Json tensors = Json::object();
  for (const Parameter* p : parameters()) tensors[p->name] = tensor_to_json(p->value);
  j["tensors"] = std::move(tensors);
  return j;
}

Model Model::from_json(const Json& json) {
  try {
    if (json.at("version").get<int>() != kModelFormatVersion) {
      throw FormatError("unsupported model checkpoint version");
    }
    std::vector<SlotSpec> slots;
    for (const auto& s : json.at("slots")) {
      slots.push_back({s.at("name").get<std::string>(), s.at("dim").get<std::size_t>()});
    }
    Model model(ModelConfig::from_json(json.at("config")),
                json.at("vocabSize").get<std::size_t>(), std::move(slots),
                IndicatorSpec::from_json(json.at("indicatorSpec")), json.at("bos").get<int>());
    const Json& tensors = json.at("tensors");
    for (Parameter* p : model.parameters()) {
      Tensor t = tensor_from_json(tensors.at(p->name));
      if (t.shape() != p->value.shape()) {
        throw FormatError("tensor " + p->name + " has shape " + shape_string(t.shape()) +
                          ", expected " + shape_string(p->value.shape()));
      }
      p->value = std::move(t);
      p->grad = Tensor::zeros_like(p->value);
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad model checkpoint: ") + e.what());
  }
}

}  // namespace snapdial
