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

#include "snapdial/tracker/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <set>

#include "snapdial/error.hpp"
#include "snapdial/numerics/ops.hpp"
#include "snapdial/numerics/optim.hpp"
#include "snapdial/numerics/rng.hpp"

namespace snapdial {

namespace {

constexpr int kTrackerFormatVersion = 1;

double dot_sparse(std::span<const double> w, const SparseFeatures& f) {
  double s = 0.0;
  for (const auto& [i, c] : f) s += w[static_cast<std::size_t>(i)] * c;
  return s;
}

void axpy_sparse(double a, const SparseFeatures& f, std::span<double> w) {
  for (const auto& [i, c] : f) w[static_cast<std::size_t>(i)] += a * c;
}

// Features of one user turn for every head, computed once per turn.
struct TurnFeatures {
  // slot -> one entry per value, then the slot-level view
  std::map<std::string, std::vector<SparseFeatures>> informable;
  std::map<std::string, SparseFeatures> requestable;
};

TurnFeatures turn_features(const TrackerModel& model, const Tokens& surface) {
  TurnFeatures out;
  const Ontology& ont = model.ontology();
  for (const auto& slot : ont.informable) {
    auto& list = out.informable[slot.name];
    for (const auto& v : slot.values) {
      list.push_back(model.featurize(model.informable_view(surface, slot.name, v)));
    }
    list.push_back(model.featurize(model.informable_view(surface, slot.name, "")));
  }
  for (const auto& slot : ont.requestable) {
    out.requestable[slot] = model.featurize(model.requestable_view(surface, slot));
  }
  return out;
}

struct SlotOutput {
  std::vector<double> probs;
};

std::vector<double> informable_forward(const TrackerModel::InformableHead& head,
                                       const std::vector<SparseFeatures>& feats,
                                       const std::vector<double>& prev) {
  const std::size_t n_values = feats.size() - 1;
  std::vector<double> logits(n_values + 2);
  const auto& beta = head.beta.value;
  const auto& b = head.b.value;
  for (std::size_t k = 0; k < n_values; ++k) {
    logits[k] = dot_sparse(head.w.value.row(0), feats[k]) + beta[0] * prev[k] + b[0];
  }
  const auto& slot_view = feats.back();
  logits[n_values] =
      dot_sparse(head.w.value.row(1), slot_view) + beta[1] * prev[n_values] + b[1];
  logits[n_values + 1] =
      dot_sparse(head.w.value.row(2), slot_view) + beta[2] * prev[n_values + 1] + b[2];
  softmax_inplace(logits);
  return logits;
}

double requestable_forward(const TrackerModel::RequestableHead& head,
                           const SparseFeatures& feats) {
  return sigmoid(dot_sparse(head.w.value.row(0), feats) + head.b.value[0]);
}

// Accumulates gradients of -log p[gold] into the head.
void informable_backward(TrackerModel::InformableHead& head,
                         const std::vector<SparseFeatures>& feats,
                         const std::vector<double>& prev, const std::vector<double>& probs,
                         std::size_t gold) {
  const std::size_t n_values = feats.size() - 1;
  auto dw0 = head.w.grad.row(0);
  for (std::size_t k = 0; k < n_values + 2; ++k) {
    const double d = probs[k] - (k == gold ? 1.0 : 0.0);
    const std::size_t row = k < n_values ? 0 : (k == n_values ? 1 : 2);
    if (row == 0) {
      axpy_sparse(d, feats[k], dw0);
    } else {
      axpy_sparse(d, feats.back(), head.w.grad.row(row));
    }
    head.beta.grad[row] += d * prev[k];
    head.b.grad[row] += d;
  }
}

std::vector<Parameter*> collect(std::map<std::string, TrackerModel::InformableHead>& inf,
                                std::map<std::string, TrackerModel::RequestableHead>& req) {
  std::vector<Parameter*> out;
  for (auto& [slot, h] : inf) {
    out.push_back(&h.w);
    out.push_back(&h.beta);
    out.push_back(&h.b);
  }
  for (auto& [slot, h] : req) {
    out.push_back(&h.w);
    out.push_back(&h.b);
  }
  return out;
}

}  // namespace

std::string to_string(BeliefRepresentation rep) {
  return rep == BeliefRepresentation::kFull ? "full" : "summary";
}

BeliefRepresentation belief_from_string(const std::string& text) {
  if (text == "full") return BeliefRepresentation::kFull;
  if (text == "summary") return BeliefRepresentation::kSummary;
  throw ConfigError("belief representation must be full or summary, got '" + text + "'");
}

BeliefState BeliefState::prior(const Ontology& ontology) {
  BeliefState s;
  for (const auto& slot : ontology.informable) {
    std::vector<double> p(slot.values.size() + 2, 0.0);
    p.back() = 1.0;
    s.informable[slot.name] = std::move(p);
  }
  for (const auto& slot : ontology.requestable) s.requestable[slot] = 0.0;
  return s;
}

std::map<std::string, std::string> BeliefState::top_values(const Ontology& ontology) const {
  std::map<std::string, std::string> out;
  for (const auto& slot : ontology.informable) {
    const auto& p = informable.at(slot.name);
    const std::size_t k =
        static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    if (k < slot.values.size()) {
      out[slot.name] = slot.values[k];
    } else {
      out[slot.name] = k == slot.values.size() ? kDontCare : kNotMentioned;
    }
  }
  return out;
}

std::vector<double> summarize_slot(const std::vector<double>& full) {
  if (full.size() < 3) throw DimensionError("informable belief needs at least 3 entries");
  const std::size_t n = full.size() - 2;
  double mass = 0.0;
  for (std::size_t k = 0; k < n; ++k) mass += full[k];
  return {mass, full[n], full[n + 1]};
}

BeliefState summarize(const BeliefState& full) {
  BeliefState out;
  for (const auto& [slot, p] : full.informable) out.informable[slot] = summarize_slot(p);
  out.requestable = full.requestable;
  return out;
}

std::vector<double> belief_vector(const BeliefState& state, const Ontology& ontology,
                                  const std::string& slot, BeliefRepresentation rep) {
  if (ontology.is_informable(slot)) {
    const auto& p = state.informable.at(slot);
    if (p.size() != ontology.values(slot).size() + 2) {
      throw DimensionError("belief for slot " + slot + " has " + std::to_string(p.size()) +
                           " entries");
    }
    return rep == BeliefRepresentation::kFull ? p : summarize_slot(p);
  }
  return {state.requestable.at(slot)};
}

std::size_t belief_dim(const Ontology& ontology, const std::string& slot,
                       BeliefRepresentation rep) {
  if (!ontology.is_informable(slot)) return 1;
  return rep == BeliefRepresentation::kFull ? ontology.values(slot).size() + 2 : 3;
}

std::vector<std::string> ngram_strings(const Tokens& view) {
  std::vector<std::string> out;
  Tokens padded;
  padded.reserve(view.size() + 2);
  padded.push_back("<s>");
  padded.insert(padded.end(), view.begin(), view.end());
  padded.push_back("</s>");
  for (std::size_t i = 1; i + 1 < padded.size(); ++i) out.push_back(padded[i]);
  for (std::size_t i = 0; i + 1 < padded.size(); ++i) {
    out.push_back(padded[i] + " " + padded[i + 1]);
  }
  return out;
}

TrackerModel::TrackerModel(Ontology ontology, const Database& database,
                           std::vector<std::string> features)
    : ontology_(std::move(ontology)), lexicon_(ontology_, database),
      features_(std::move(features)) {
  ontology_.validate();
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (!feature_index_.emplace(features_[i], static_cast<int>(i)).second) {
      throw ConfigError("duplicate tracker feature '" + features_[i] + "'");
    }
  }
  const std::size_t f = features_.size();
  for (const auto& slot : ontology_.informable) {
    const std::string base = "tracker." + slot.name + ".";
    informable_.emplace(slot.name, InformableHead{Parameter(base + "w", Shape{3, f}),
                                                  Parameter(base + "beta", Shape{3}),
                                                  Parameter(base + "b", Shape{3})});
  }
  for (const auto& slot : ontology_.requestable) {
    const std::string base = "tracker.req." + slot + ".";
    requestable_.emplace(slot, RequestableHead{Parameter(base + "w", Shape{1, f}),
                                               Parameter(base + "b", Shape{1})});
  }
}

Tokens TrackerModel::informable_view(const Tokens& surface, const std::string& slot,
                                     const std::string& value) const {
  Tokens out;
  std::size_t i = 0;
  for (const auto& m : lexicon_.find_mentions(surface)) {
    for (; i < m.begin; ++i) out.push_back(surface[i]);
    if (m.kind == MentionKind::kSlotName) {
      out.push_back(m.slot == slot ? "#slot" : "#xslot");
    } else if (m.slot == slot) {
      out.push_back(!value.empty() && m.value == value ? "#val" : "#oval");
    } else {
      out.push_back("#xval");
    }
    i = m.end;
  }
  for (; i < surface.size(); ++i) out.push_back(surface[i]);
  return out;
}

Tokens TrackerModel::requestable_view(const Tokens& surface, const std::string& slot) const {
  Tokens out;
  std::size_t i = 0;
  for (const auto& m : lexicon_.find_mentions(surface)) {
    for (; i < m.begin; ++i) out.push_back(surface[i]);
    if (m.kind == MentionKind::kSlotName) {
      out.push_back(m.slot == slot ? "#slot" : "#xslot");
    } else {
      out.push_back("#xval");
    }
    i = m.end;
  }
  for (; i < surface.size(); ++i) out.push_back(surface[i]);
  return out;
}

SparseFeatures TrackerModel::featurize(const Tokens& view) const {
  std::map<int, double> counts;
  for (const auto& g : ngram_strings(view)) {
    auto it = feature_index_.find(g);
    if (it != feature_index_.end()) counts[it->second] += 1.0;
  }
  return {counts.begin(), counts.end()};
}

BeliefState TrackerModel::step(const BeliefState& previous, const Tokens& user_surface) const {
  const TurnFeatures tf = turn_features(*this, user_surface);
  BeliefState out;
  for (const auto& slot : ontology_.informable) {
    out.informable[slot.name] = informable_forward(
        informable_.at(slot.name), tf.informable.at(slot.name), previous.informable.at(slot.name));
  }
  for (const auto& slot : ontology_.requestable) {
    out.requestable[slot] = requestable_forward(requestable_.at(slot), tf.requestable.at(slot));
  }
  return out;
}

std::vector<BeliefState> TrackerModel::track(const Dialogue& dialogue) const {
  std::vector<BeliefState> out;
  BeliefState state = BeliefState::prior(ontology_);
  for (const auto& turn : dialogue.turns) {
    state = step(state, turn.user_surface);
    out.push_back(state);
  }
  return out;
}

BeliefState TrackerModel::track_prefix(const std::vector<Tokens>& user_turns) const {
  BeliefState state = BeliefState::prior(ontology_);
  for (const auto& t : user_turns) state = step(state, t);
  return state;
}

std::vector<Parameter*> TrackerModel::parameters() { return collect(informable_, requestable_); }

std::string TrackerModel::parameter_hash() const {
  std::uint64_t h = fnv1a("");
  auto* self = const_cast<TrackerModel*>(this);
  for (const Parameter* p : self->parameters()) {
    h = fnv1a(p->name, h);
    const auto data = p->value.data();
    h = fnv1a(std::string_view(reinterpret_cast<const char*>(data.data()),
                               data.size() * sizeof(double)),
              h);
  }
  return hex64(h);
}

Json TrackerModel::to_json() const {
  Json j;
  j["version"] = kTrackerFormatVersion;
  j["ontology"] = ontology_.to_json();
  j["featureMap"] = features_;
  Json tensors = Json::object();
  auto* self = const_cast<TrackerModel*>(this);
  for (const Parameter* p : self->parameters()) tensors[p->name] = tensor_to_json(p->value);
  j["tensors"] = std::move(tensors);
  return j;
}

TrackerModel TrackerModel::from_json(const Json& json, const Database& database) {
  try {
    if (json.at("version").get<int>() != kTrackerFormatVersion) {
      throw FormatError("unsupported tracker checkpoint version");
    }
    TrackerModel model(Ontology::from_json(json.at("ontology")), database,
                       json.at("featureMap").get<std::vector<std::string>>());
    const Json& tensors = json.at("tensors");
    for (Parameter* p : model.parameters()) {
      Tensor t = tensor_from_json(tensors.at(p->name));
      if (t.shape() != p->value.shape()) {
        throw FormatError("tracker tensor " + p->name + " has shape " +
                          shape_string(t.shape()) + ", expected " +
                          shape_string(p->value.shape()));
      }
      p->value = std::move(t);
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad tracker checkpoint: ") + e.what());
  }
}

void TrackerModel::save(const std::filesystem::path& path) const {
  write_json_file(path, to_json());
}

TrackerModel TrackerModel::load(const std::filesystem::path& path, const Database& database) {
  return from_json(read_json_file(path), database);
}

namespace {

struct CachedDialogue {
  const Dialogue* dialogue;
  std::vector<TurnFeatures> turns;
};

std::vector<CachedDialogue> cache(const TrackerModel& model,
                                  const std::vector<Dialogue>& dialogues) {
  std::vector<CachedDialogue> out;
  out.reserve(dialogues.size());
  for (const auto& d : dialogues) {
    CachedDialogue c{&d, {}};
    for (const auto& t : d.turns) c.turns.push_back(turn_features(model, t.user_surface));
    out.push_back(std::move(c));
  }
  return out;
}

// Forward (and optionally backward) over one dialogue; returns summed loss.
double run_dialogue(TrackerModel& model, const CachedDialogue& c, bool backward) {
  const Ontology& ont = model.ontology();
  BeliefState prev = BeliefState::prior(ont);
  double loss = 0.0;
  for (std::size_t t = 0; t < c.turns.size(); ++t) {
    const Turn& turn = c.dialogue->turns[t];
    const TurnFeatures& tf = c.turns[t];
    BeliefState next;
    for (const auto& slot : ont.informable) {
      auto& head = model.informable_heads().at(slot.name);
      const auto& feats = tf.informable.at(slot.name);
      const auto& p_prev = prev.informable.at(slot.name);
      auto probs = informable_forward(head, feats, p_prev);
      const std::size_t gold = turn.labels.informable_class(ont, slot.name);
      loss -= std::log(std::max(probs[gold], kCrossEntropyClamp));
      if (backward) informable_backward(head, feats, p_prev, probs, gold);
      next.informable[slot.name] = std::move(probs);
    }
    for (const auto& slot : ont.requestable) {
      auto& head = model.requestable_heads().at(slot);
      const auto& feats = tf.requestable.at(slot);
      const double p = requestable_forward(head, feats);
      auto it = turn.labels.requestable.find(slot);
      const double y = it != turn.labels.requestable.end() && it->second ? 1.0 : 0.0;
      loss += binary_cross_entropy(y, p, kCrossEntropyClamp);
      if (backward) {
        axpy_sparse(p - y, feats, head.w.grad.row(0));
        head.b.grad[0] += p - y;
      }
      next.requestable[slot] = p;
    }
    prev = std::move(next);
  }
  return loss;
}

std::vector<std::string> collect_features(const TrackerModel& probe,
                                          const std::vector<Dialogue>& dialogues) {
  std::set<std::string> seen;
  const Ontology& ont = probe.ontology();
  for (const auto& d : dialogues) {
    for (const auto& t : d.turns) {
      auto add = [&](const Tokens& view) {
        for (auto& g : ngram_strings(view)) seen.insert(std::move(g));
      };
      for (const auto& slot : ont.informable) {
        add(probe.informable_view(t.user_surface, slot.name, ""));
        for (const auto& v : slot.values) add(probe.informable_view(t.user_surface, slot.name, v));
      }
      for (const auto& slot : ont.requestable) add(probe.requestable_view(t.user_surface, slot));
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

double tracker_loss(const TrackerModel& model, const std::vector<Dialogue>& dialogues) {
  auto& m = const_cast<TrackerModel&>(model);
  double total = 0.0;
  for (const auto& c : cache(model, dialogues)) total += run_dialogue(m, c, false);
  return total;
}

std::map<std::string, double> tracker_accuracy(const TrackerModel& model,
                                               const std::vector<Dialogue>& dialogues) {
  const Ontology& ont = model.ontology();
  std::map<std::string, double> correct;
  double turns = 0.0;
  for (const auto& d : dialogues) {
    const auto states = model.track(d);
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      turns += 1.0;
      const auto top = states[t].top_values(ont);
      for (const auto& slot : ont.informable) {
        if (top.at(slot.name) == d.turns[t].labels.informable.at(slot.name)) {
          correct[slot.name] += 1.0;
        } else {
          correct[slot.name] += 0.0;
        }
      }
      for (const auto& slot : ont.requestable) {
        auto it = d.turns[t].labels.requestable.find(slot);
        const bool gold = it != d.turns[t].labels.requestable.end() && it->second;
        const bool pred = states[t].requestable.at(slot) >= 0.5;
        correct["req." + slot] += gold == pred ? 1.0 : 0.0;
      }
    }
  }
  for (auto& [k, v] : correct) v = turns > 0 ? v / turns : 0.0;
  return correct;
}

TrackerModel train_trackers(const Ontology& ontology, const Database& database,
                            const std::vector<Dialogue>& train,
                            const std::vector<Dialogue>& valid,
                            const TrackerTrainOptions& options, TrackerHistory* history) {
  if (train.empty()) throw ConfigError("tracker training split is empty");
  if (valid.empty()) throw ConfigError("tracker validation split is empty");
  const TrackerModel probe(ontology, database, {});
  TrackerModel model(ontology, database, collect_features(probe, train));
  const auto train_cache = cache(model, train);
  const auto valid_cache = cache(model, valid);

  SgdOptions sgd;
  sgd.learning_rate = options.learning_rate;
  sgd.l2 = options.l2;
  sgd.clip_mode = ClipMode::kNone;
  const auto params = model.parameters();

  Rng rng(mix_seed(options.seed, 0x7472616b));
  std::vector<std::size_t> order(train_cache.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  TrackerHistory local;
  TrackerHistory& hist = history ? *history : local;
  hist = {};
  double best = std::numeric_limits<double>::infinity();
  std::vector<Tensor> best_values;
  int since_best = 0;
  for (int epoch = 1; epoch <= options.max_epochs; ++epoch) {
    rng.shuffle(order);
    double train_loss = 0.0;
    for (std::size_t idx : order) {
      train_loss += run_dialogue(model, train_cache[idx], true);
      clip_and_step(params, sgd);
    }
    double valid_loss = 0.0;
    for (const auto& c : valid_cache) valid_loss += run_dialogue(model, c, false);
    hist.train_loss.push_back(train_loss);
    hist.valid_loss.push_back(valid_loss);
    if (valid_loss < best) {
      best = valid_loss;
      hist.best_epoch = epoch;
      best_values.clear();
      for (const Parameter* p : params) best_values.push_back(p->value);
      since_best = 0;
    } else if (++since_best >= options.patience) {
      break;
    }
  }
  for (std::size_t i = 0; i < params.size(); ++i) params[i]->value = best_values[i];
  return model;
}

}  // namespace snapdial
