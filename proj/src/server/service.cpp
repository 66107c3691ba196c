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

#include "snapdial/server/service.hpp"

#include <algorithm>
#include <cstdio>

#include <httplib.h>

#include "snapdial/analysis/analysis.hpp"
#include "snapdial/error.hpp"

namespace snapdial {

namespace {

Reply error_reply(int status, const std::string& message, const std::string& stage = "") {
  Json body{{"error", message}};
  if (!stage.empty()) body["stage"] = stage;
  return {status, std::move(body)};
}

Reply unavailable() { return error_reply(503, "no checkpoint loaded"); }

Json history_json(const std::vector<HistoryEntry>& history) {
  Json out = Json::array();
  for (const auto& h : history) {
    Json e{{"role", h.role}, {"text", h.text}};
    if (h.role == "system") e["skeletal"] = join_tokens(h.skeletal);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

Json belief_summary_json(const BeliefState& belief, const Ontology& ontology) {
  const auto top = belief.top_values(ontology);
  Json informable = Json::array();
  for (const auto& slot : ontology.informable) {
    const auto s = summarize_slot(belief.informable.at(slot.name));
    informable.push_back(Json{{"slot", slot.name},
                              {"value", s[0]},
                              {"dontcare", s[1]},
                              {"none", s[2]},
                              {"top", top.at(slot.name)}});
  }
  Json requestable = Json::array();
  for (const auto& slot : ontology.requestable) {
    requestable.push_back(Json{{"slot", slot}, {"requested", belief.requestable.at(slot)}});
  }
  return Json{{"informable", std::move(informable)}, {"requestable", std::move(requestable)}};
}

ChatService::ChatService(std::shared_ptr<const Bundle> bundle, std::uint64_t seed,
                         std::chrono::seconds idle_timeout, BeamOptions beam)
    : bundle_(std::move(bundle)), seed_(seed), idle_timeout_(idle_timeout), beam_(beam) {}

Reply ChatService::create_session() {
  if (!bundle_) return unavailable();
  evict_idle();
  std::lock_guard lock(mutex_);
  const std::uint64_t n = ++created_;
  const std::uint64_t session_seed = mix_seed(seed_, n);
  char id[40];
  std::snprintf(id, sizeof(id), "s%llu-%s", static_cast<unsigned long long>(n),
                hex64(session_seed).substr(0, 8).c_str());
  sessions_[id] = std::make_shared<Session>(bundle_->workspace.corpus.ontology, session_seed);
  return {200, Json{{"sessionId", id}}};
}

std::shared_ptr<ChatService::Session> ChatService::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

Reply ChatService::get_session(const std::string& id) {
  if (!bundle_) return unavailable();
  auto s = find(id);
  if (!s) return error_reply(404, "unknown session " + id);
  std::lock_guard lock(s->mutex);
  s->last_used = Clock::now();
  return {200, Json{{"sessionId", id},
                    {"history", history_json(s->history)},
                    {"beliefSummary",
                     belief_summary_json(s->state.belief, bundle_->workspace.corpus.ontology)}}};
}

Json ChatService::turn_payload(const Response& r) const {
  const Ontology& ontology = bundle_->workspace.corpus.ontology;
  const Model& model = bundle_->checkpoint->model;
  Json j;
  j["surface"] = r.surface;
  j["skeletal"] = join_tokens(r.skeletal);
  j["complete"] = r.complete;
  j["beliefSummary"] = belief_summary_json(r.belief, ontology);
  j["dbMatchBin"] = r.db.bin;
  const bool offered = std::find(r.skeletal.begin(), r.skeletal.end(), "[v.name]") != r.skeletal.end();
  if (offered && r.entity) {
    j["offeredEntity"] = Json{{"name", r.entity->name}, {"attributes", r.entity->attributes}};
  }
  Json cands = Json::array();
  for (const auto& c : r.candidates) {
    cands.push_back(Json{{"skeletal", join_tokens(bundle_->checkpoint->vocab.decode(c.tokens))},
                         {"score", c.score}});
  }
  j["candidates"] = std::move(cands);
  if (model.config().attention || model.config().snapshot) {
    const TurnReplay replay = replay_response(model, bundle_->checkpoint->vocab, r);
    if (model.config().attention) j["attentionHeatMap"] = attention_heatmap(model, ontology, replay).to_json();
    if (model.config().snapshot) j["snapshotTrace"] = snapshot_trace(model, replay).to_json();
  }
  return j;
}

Reply ChatService::utterance(const std::string& id, const std::string& request_body) {
  if (!bundle_) return unavailable();
  auto s = find(id);
  if (!s) return error_reply(404, "unknown session " + id);
  std::string text;
  try {
    const Json body = Json::parse(request_body);
    if (!body.is_object() || !body.contains("text") || !body.at("text").is_string()) {
      return error_reply(400, "body must be a JSON object with a string field 'text'");
    }
    text = body.at("text").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    return error_reply(400, "body is not valid JSON");
  }
  if (tokenize(text).empty()) return error_reply(400, "text is empty");

  std::lock_guard lock(s->mutex);
  s->last_used = Clock::now();
  DialogueState scratch = s->state;
  try {
    const Response r = respond(bundle_->agent(beam_), scratch, text);
    Json payload;
    try {
      payload = turn_payload(r);
    } catch (const std::exception& e) {
      throw StageError("inspect", e.what());
    }
    s->state = std::move(scratch);
    s->history.push_back({"user", text, {}});
    s->history.push_back({"system", r.surface, r.skeletal});
    return {200, std::move(payload)};
  } catch (const StageError& e) {
    return error_reply(500, e.what(), e.stage());
  }
}

Reply ChatService::model_info() const {
  if (!bundle_) return unavailable();
  const Checkpoint& c = *bundle_->checkpoint;
  const ModelConfig& cfg = c.model.config();
  return {200, Json{{"config", cfg.to_json()},
                    {"label", cfg.label()},
                    {"variant", to_string(cfg.variant)},
                    {"attention", cfg.attention},
                    {"snapshot", cfg.snapshot},
                    {"belief", to_string(cfg.belief)},
                    {"vocabSize", c.vocab.size()},
                    {"indicatorSpec", c.model.indicators().to_json()},
                    {"trackers", bundle_->workspace.corpus.ontology.tracker_slots()}}};
}

std::size_t ChatService::evict_idle(Clock::time_point now) {
  std::lock_guard lock(mutex_);
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_used > idle_timeout_) {
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t ChatService::session_count() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(ChatService& service) : impl_(std::make_unique<Impl>()) {
  auto& srv = impl_->server;
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  auto send = [](httplib::Response& res, const Reply& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  srv.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  srv.Post("/session", [&service, send](const httplib::Request&, httplib::Response& res) {
    send(res, service.create_session());
  });
  srv.Get(R"(/session/([^/]+))", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.get_session(req.matches[1]));
  });
  srv.Post(R"(/session/([^/]+)/utterance)",
           [&service, send](const httplib::Request& req, httplib::Response& res) {
             send(res, service.utterance(req.matches[1], req.body));
           });
  srv.Get("/model", [&service, send](const httplib::Request&, httplib::Response& res) {
    send(res, service.model_info());
  });
  srv.set_exception_handler([send](const httplib::Request&, httplib::Response& res,
                                   std::exception_ptr ep) {
    std::string what = "unknown error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    send(res, error_reply(500, what, "server"));
  });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace snapdial
