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

#include <gtest/gtest.h>

#include <httplib.h>
#include <sys/wait.h>

#include <cstdlib>
#include <thread>

#include "fixture.hpp"
#include "snapdial/server/service.hpp"

namespace snapdial {
namespace {

using testing::small_world;

// Corpus directory with trackers and a randomly initialised checkpoint.
struct ServedCorpus {
  std::filesystem::path dir;
  std::shared_ptr<const Bundle> bundle;
};

const ServedCorpus& served() {
  static const ServedCorpus s = [] {
    const auto& w = small_world();
    ServedCorpus out;
    out.dir = testing::temp_dir("served");
    const CorpusPaths paths{out.dir};
    save_workspace(w.ws, paths);
    w.tracker->save(paths.trackers());
    const Model m =
        testing::random_model(testing::model_config(Variant::kHybrid, true, true), 4);
    save_checkpoint(out.dir / "ckpt.json", m, w.ws.vocab);
    out.bundle = load_bundle(paths, out.dir / "ckpt.json");
    return out;
  }();
  return s;
}

BeamOptions short_beam() {
  BeamOptions b;
  b.max_len = 12;
  return b;
}

TEST(Service, SessionLifecycle) {
  ChatService svc(served().bundle, 1, std::chrono::minutes(30), short_beam());
  const Reply created = svc.create_session();
  ASSERT_EQ(created.status, 200);
  const std::string id = created.body.at("sessionId");
  const Reply turn = svc.utterance(id, R"({"text": "i want a cheap restaurant"})");
  ASSERT_EQ(turn.status, 200) << turn.body.dump();
  for (const char* key : {"surface", "skeletal", "beliefSummary", "dbMatchBin",
                          "attentionHeatMap", "snapshotTrace"}) {
    EXPECT_TRUE(turn.body.contains(key)) << key;
  }
  const Reply got = svc.get_session(id);
  EXPECT_EQ(got.status, 200);
  EXPECT_EQ(got.body.at("history").size(), 2u);
  EXPECT_EQ(svc.session_count(), 1u);
}

TEST(Service, ErrorStatuses) {
  ChatService svc(served().bundle, 1, std::chrono::seconds(5), short_beam());
  EXPECT_EQ(svc.get_session("nope").status, 404);
  EXPECT_EQ(svc.utterance("nope", R"({"text":"hi"})").status, 404);
  const std::string id = svc.create_session().body.at("sessionId");
  EXPECT_EQ(svc.utterance(id, R"({"text":"   "})").status, 400);
  EXPECT_EQ(svc.utterance(id, "not json").status, 400);
  EXPECT_EQ(svc.evict_idle(ChatService::Clock::now() + std::chrono::seconds(6)), 1u);
  EXPECT_EQ(svc.get_session(id).status, 404);

  ChatService empty(nullptr, 1);
  EXPECT_EQ(empty.model_info().status, 503);
  EXPECT_EQ(empty.create_session().status, 503);
}

TEST(Service, ModelInfo) {
  ChatService svc(served().bundle, 1);
  const Reply r = svc.model_info();
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body.at("variant"), "hybrid");
  EXPECT_EQ(r.body.at("attention"), true);
  EXPECT_EQ(r.body.at("snapshot"), true);
  EXPECT_EQ(r.body.at("vocabSize"), small_world().ws.vocab.size());
  EXPECT_EQ(r.body.at("indicatorSpec").size(), 8u);
}

TEST(Http, RoutesAndCors) {
  ChatService svc(served().bundle, 1, std::chrono::minutes(30), short_beam());
  HttpServer server(svc);
  const int port = server.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread t([&] { server.listen(); });
  httplib::Client cli("127.0.0.1", port);
  const auto created = cli.Post("/session", "", "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 200);
  EXPECT_EQ(created->get_header_value("Access-Control-Allow-Origin"), "*");
  const std::string id = Json::parse(created->body).at("sessionId");
  const auto turn = cli.Post("/session/" + id + "/utterance", R"({"text":"hello"})",
                             "application/json");
  ASSERT_TRUE(turn);
  EXPECT_EQ(turn->status, 200);
  EXPECT_EQ(cli.Post("/session/" + id + "/utterance", R"({"text":""})", "application/json")->status,
            400);
  EXPECT_EQ(cli.Get("/session/unknown")->status, 404);
  EXPECT_EQ(cli.Get("/model")->status, 200);
  EXPECT_EQ(cli.Options("/session")->status, 204);
  server.stop();
  t.join();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SNAPDIAL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

TEST(Cli, ExitCodes) {
  const auto dir = testing::temp_dir("cli");
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("train --corpus " + (dir / "missing").string()), 2);
  EXPECT_EQ(run_cli("gen-corpus --corpus " + (dir / "c").string() + " --dialogues 20 --seed 3"), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "c" / "corpus.json"));
  EXPECT_EQ(run_cli("train --corpus " + (dir / "c").string() + " --variant gru"), 2);
  EXPECT_EQ(run_cli("decode --corpus " + (dir / "c").string() + " --checkpoint " +
                    (dir / "none.json").string()),
            2);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace snapdial
