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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "snapdial/app/workspace.hpp"
#include "snapdial/evaluation/metrics.hpp"

namespace snapdial {

// runs/<config-hash>/<seed>/
struct RunPaths {
  std::filesystem::path dir;

  std::filesystem::path config() const { return dir / "config.json"; }
  std::filesystem::path checkpoint() const { return dir / "checkpoint.json"; }
  std::filesystem::path history() const { return dir / "history.csv"; }
  std::filesystem::path timing() const { return dir / "timing.json"; }
  std::filesystem::path decode() const { return dir / "decode.jsonl"; }
  std::filesystem::path metrics() const { return dir / "metrics.csv"; }
  std::filesystem::path manifest() const { return dir / "manifest.json"; }
};

RunPaths run_paths(const std::filesystem::path& root, const TrainConfig& config);

// Corpus, trackers and the corpus fingerprint shared by every run.
struct RunEnv {
  const Workspace* workspace = nullptr;
  const TrackerModel* tracker = nullptr;
  std::string corpus_hash;

  Pipeline pipeline() const;
};

using RunLog = std::function<void(const std::string&)>;

// Trains `config` once per seed and writes config, checkpoint, history,
// timing and manifest into each run directory. Failed seeds are reported
// through the log and skipped; returns the directories that succeeded.
std::vector<RunPaths> train_runs(const TrainConfig& config, const std::vector<std::uint64_t>& seeds,
                                 const RunEnv& env, const std::filesystem::path& root,
                                 int threads = 1, const RunLog& log = {});

// Decodes the test split with the run's checkpoint into decode.jsonl.
std::vector<DecodedTurn> decode_run(const RunPaths& run, const RunEnv& env,
                                    const BeamOptions& beam = {});

// Scores decode.jsonl against the test split and writes metrics.csv.
Metrics eval_run(const RunPaths& run, const Workspace& workspace, bool mean_of_five = false);

std::string metrics_csv(const Metrics& m);

struct ConfigRuns {
  std::filesystem::path dir;
  TrainConfig config;
  std::vector<RunPaths> seeds;  // sorted by seed
};

// Every runs/<hash>/ holding a config.json, sorted by directory name.
std::vector<ConfigRuns> scan_runs(const std::filesystem::path& root);

struct ResultsTable {
  std::vector<ReportRow> rows;
  std::vector<std::string> incomplete;  // run directories without a decode dump
};

// Scores every run (writing its metrics.csv) and lays the rows out in
// results-table order: each grid row without then with snapshot, followed
// by configurations outside the grid.
ResultsTable build_results(const std::vector<ConfigRuns>& runs, const Workspace& workspace,
                           bool mean_of_five = false);

std::string arch_label(const ModelConfig& config);  // e.g. "hybrid+att"

// Writes the manifest of a directory: the given metadata plus a hash of
// every regular file below it (the manifest itself excluded).
void write_manifest(const std::filesystem::path& dir, Json metadata);

}  // namespace snapdial
