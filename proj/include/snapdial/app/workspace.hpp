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

#include <filesystem>
#include <memory>
#include <string>

#include "snapdial/corpus/generator.hpp"
#include "snapdial/corpus/vocab.hpp"
#include "snapdial/decoding/respond.hpp"
#include "snapdial/tracker/tracker.hpp"
#include "snapdial/training/training.hpp"

namespace snapdial {

// Files of a corpus directory.
struct CorpusPaths {
  std::filesystem::path dir;

  std::filesystem::path corpus() const { return dir / "corpus.json"; }
  std::filesystem::path database() const { return dir / "database.json"; }
  std::filesystem::path split() const { return dir / "split.json"; }
  std::filesystem::path vocab() const { return dir / "vocab.json"; }
  std::filesystem::path trackers() const { return dir / "trackers.json"; }
  std::filesystem::path manifest() const { return dir / "manifest.json"; }
};

// A generated corpus with its database, split and vocabulary.
struct Workspace {
  Corpus corpus;
  Database database;
  CorpusSplit split;
  Vocabulary vocab;
};

Workspace make_workspace(std::size_t n_dialogues, std::uint64_t seed, int min_count = 2);
void save_workspace(const Workspace& ws, const CorpusPaths& paths);
// Throws ConfigError when a file is missing, FormatError when malformed.
Workspace load_workspace(const CorpusPaths& paths);

// Everything needed to run the agent from a checkpoint.
struct Bundle {
  Workspace workspace;
  std::unique_ptr<TrackerModel> tracker;
  std::unique_ptr<Lexicon> lexicon;
  std::unique_ptr<Checkpoint> checkpoint;
  std::filesystem::path checkpoint_path;

  Pipeline pipeline() const;
  Agent agent(const BeamOptions& beam = {}) const;
};

std::shared_ptr<const Bundle> load_bundle(const CorpusPaths& corpus,
                                          const std::filesystem::path& checkpoint);

}  // namespace snapdial
