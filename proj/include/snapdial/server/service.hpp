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

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "snapdial/app/workspace.hpp"

namespace snapdial {

struct Reply {
  int status = 200;
  Json body;
};

struct HistoryEntry {
  std::string role;  // "user" or "system"
  std::string text;
  Tokens skeletal;   // system turns only
};

// Chat sessions over one immutable checkpoint bundle. Transport-agnostic;
// the HTTP layer maps requests onto these calls. Requests on one session
// are serialized, different sessions run concurrently.
class ChatService {
 public:
  using Clock = std::chrono::steady_clock;

  // `bundle` may be null: every model endpoint then answers 503.
  ChatService(std::shared_ptr<const Bundle> bundle, std::uint64_t seed,
              std::chrono::seconds idle_timeout = std::chrono::minutes(30),
              BeamOptions beam = {});

  Reply create_session();
  Reply get_session(const std::string& id);
  Reply utterance(const std::string& id, const std::string& request_body);
  Reply model_info() const;

  // Drops sessions idle for longer than the timeout; returns how many.
  std::size_t evict_idle(Clock::time_point now = Clock::now());
  std::size_t session_count() const;

 private:
  struct Session {
    std::mutex mutex;
    DialogueState state;
    std::vector<HistoryEntry> history;
    Clock::time_point last_used;

    Session(const Ontology& ontology, std::uint64_t seed)
        : state(ontology, seed), last_used(Clock::now()) {}
  };

  std::shared_ptr<Session> find(const std::string& id);
  Json turn_payload(const Response& r) const;

  std::shared_ptr<const Bundle> bundle_;
  std::uint64_t seed_;
  std::chrono::seconds idle_timeout_;
  BeamOptions beam_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t created_ = 0;
};

// Summary rows of a belief state: informable slots with
// [p(value), p(dontcare), p(none)] and the top value, then requestables.
Json belief_summary_json(const BeliefState& belief, const Ontology& ontology);

// Serves the service over HTTP until stopped. CORS is permissive.
class HttpServer {
 public:
  explicit HttpServer(ChatService& service);
  ~HttpServer();

  // Binds (port 0 picks a free port) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace snapdial
