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

#include "snapdial/app/workspace.hpp"

#include <map>

#include "snapdial/error.hpp"

namespace snapdial {

namespace {

void require(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("missing file " + path.string());
}

Json ids(const std::vector<Dialogue>& dialogues) {
  Json out = Json::array();
  for (const auto& d : dialogues) out.push_back(d.id);
  return out;
}

std::vector<Dialogue> pick(const std::map<std::string, const Dialogue*>& by_id, const Json& list) {
  std::vector<Dialogue> out;
  for (const auto& id : list) {
    const auto it = by_id.find(id.get<std::string>());
    if (it == by_id.end()) throw FormatError("split names unknown dialogue " + id.dump());
    out.push_back(*it->second);
  }
  return out;
}

}  // namespace

Workspace make_workspace(std::size_t n_dialogues, std::uint64_t seed, int min_count) {
  Workspace ws;
  ws.corpus.ontology = make_restaurant_ontology();
  ws.database = make_restaurant_database(ws.corpus.ontology);
  Rng rng(seed);
  ws.corpus.dialogues = generate_corpus(ws.corpus.ontology, ws.database, n_dialogues, rng);
  ws.split = split_corpus(ws.corpus.dialogues, rng);
  ws.vocab = build_vocab(ws.split.train, ws.corpus.ontology, min_count);
  return ws;
}

void save_workspace(const Workspace& ws, const CorpusPaths& paths) {
  std::filesystem::create_directories(paths.dir);
  ws.corpus.save(paths.corpus());
  write_json_file(paths.database(), ws.database.to_json());
  write_json_file(paths.split(), Json{{"train", ids(ws.split.train)},
                                      {"valid", ids(ws.split.valid)},
                                      {"test", ids(ws.split.test)}});
  write_json_file(paths.vocab(), Json{{"hash", ws.vocab.hash()}, {"tokens", ws.vocab.tokens()}});
}

Workspace load_workspace(const CorpusPaths& paths) {
  for (const auto& p : {paths.corpus(), paths.database(), paths.split(), paths.vocab()}) require(p);
  Workspace ws;
  ws.corpus = Corpus::load(paths.corpus());
  ws.database = Database::from_json(read_json_file(paths.database()));
  ws.database.validate(ws.corpus.ontology);
  try {
    std::map<std::string, const Dialogue*> by_id;
    for (const auto& d : ws.corpus.dialogues) by_id[d.id] = &d;
    const Json split = read_json_file(paths.split());
    ws.split.train = pick(by_id, split.at("train"));
    ws.split.valid = pick(by_id, split.at("valid"));
    ws.split.test = pick(by_id, split.at("test"));
    const Json vocab = read_json_file(paths.vocab());
    ws.vocab = Vocabulary(vocab.at("tokens").get<std::vector<std::string>>());
    if (ws.vocab.hash() != vocab.at("hash").get<std::string>()) {
      throw FormatError("vocabulary hash mismatch in " + paths.vocab().string());
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("bad corpus directory " + paths.dir.string() + ": " + e.what());
  }
  return ws;
}

Pipeline Bundle::pipeline() const {
  return {&workspace.corpus.ontology, &workspace.database, tracker.get(), &checkpoint->vocab};
}

Agent Bundle::agent(const BeamOptions& beam) const {
  return {pipeline(), lexicon.get(), &checkpoint->model, beam};
}

std::shared_ptr<const Bundle> load_bundle(const CorpusPaths& corpus,
                                          const std::filesystem::path& checkpoint) {
  auto b = std::make_shared<Bundle>();
  b->workspace = load_workspace(corpus);
  require(corpus.trackers());
  b->tracker = std::make_unique<TrackerModel>(
      TrackerModel::load(corpus.trackers(), b->workspace.database));
  b->lexicon = std::make_unique<Lexicon>(b->workspace.corpus.ontology, b->workspace.database);
  require(checkpoint);
  b->checkpoint = std::make_unique<Checkpoint>(load_checkpoint(checkpoint));
  b->checkpoint_path = checkpoint;
  return b;
}

}  // namespace snapdial
