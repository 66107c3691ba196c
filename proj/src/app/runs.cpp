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

#include "snapdial/app/runs.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "snapdial/error.hpp"

namespace snapdial {

namespace fs = std::filesystem;

RunPaths run_paths(const fs::path& root, const TrainConfig& config) {
  return {root / config.hash() / std::to_string(config.seed)};
}

Pipeline RunEnv::pipeline() const {
  return {&workspace->corpus.ontology, &workspace->database, tracker, &workspace->vocab};
}

void write_manifest(const fs::path& dir, Json metadata) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().filename() != "manifest.json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  Json listed = Json::object();
  for (const auto& f : files) listed[fs::relative(f, dir).generic_string()] = file_hash(f);
  metadata["files"] = std::move(listed);
  write_json_file(dir / "manifest.json", metadata);
}

std::vector<RunPaths> train_runs(const TrainConfig& config, const std::vector<std::uint64_t>& seeds,
                                 const RunEnv& env, const fs::path& root, int threads,
                                 const RunLog& log) {
  const Pipeline pipe = env.pipeline();
  const IndicatorSpec spec = default_indicator_spec(*pipe.ontology);
  const auto train_data = prepare_dialogues(env.workspace->split.train, pipe, config.model, spec);
  const auto valid_data = prepare_dialogues(env.workspace->split.valid, pipe, config.model, spec);
  std::vector<RunPaths> done;
  // One run_seeds call per range of consecutive seeds.
  std::size_t i = 0;
  while (i < seeds.size()) {
    std::size_t j = i + 1;
    while (j < seeds.size() && seeds[j] == seeds[j - 1] + 1) ++j;
    auto runs = run_seeds(config, pipe, train_data, valid_data, seeds[i],
                          static_cast<int>(j - i), threads);
    for (auto& run : runs) {
      TrainConfig c = config;
      c.seed = run.seed;
      const RunPaths paths = run_paths(root, c);
      if (!run.error.empty()) {
        if (log) log(c.model.label() + " seed " + std::to_string(run.seed) + " failed: " + run.error);
        continue;
      }
      fs::create_directories(paths.dir);
      write_json_file(paths.config(), c.to_json());
      write_json_file(paths.dir.parent_path() / "config.json", config.to_json());
      save_checkpoint(paths.checkpoint(), *run.model, env.workspace->vocab);
      write_text_file(paths.history(), run.history.csv());
      write_json_file(paths.timing(), Json{{"wallSeconds", run.history.wall_seconds},
                                           {"bestEpoch", run.history.best_epoch},
                                           {"stopEpoch", run.history.stop_epoch}});
      write_manifest(paths.dir, Json{{"command", "train"},
                                     {"configHash", c.hash()},
                                     {"corpusHash", env.corpus_hash},
                                     {"trackerHash", env.tracker->parameter_hash()},
                                     {"seed", c.seed}});
      if (log) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s seed %llu: best epoch %d of %d, %.1fs",
                      c.model.label().c_str(), static_cast<unsigned long long>(c.seed),
                      run.history.best_epoch, run.history.stop_epoch, run.history.wall_seconds);
        log(buf);
      }
      done.push_back(paths);
    }
    i = j;
  }
  return done;
}

std::vector<DecodedTurn> decode_run(const RunPaths& run, const RunEnv& env, const BeamOptions& beam) {
  const Checkpoint ck = load_checkpoint(run.checkpoint());
  if (ck.vocab.hash() != env.workspace->vocab.hash()) {
    throw ConfigError("checkpoint " + run.checkpoint().string() +
                      " was trained with a different vocabulary");
  }
  auto dump = decode_corpus(ck.model, env.pipeline(), env.workspace->split.test, beam);
  write_text_file(run.decode(), dump_jsonl(dump));
  return dump;
}

std::string metrics_csv(const Metrics& m) {
  char line[256];
  std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%zu,%zu\n", m.success,
                m.slot_match, m.t5_bleu, m.t1_bleu, m.corpus_t1_bleu, m.dialogues, m.turns);
  return std::string("success,slotMatch,t5Bleu,t1Bleu,corpusT1Bleu,dialogues,turns\n") + line;
}

Metrics eval_run(const RunPaths& run, const Workspace& workspace, bool mean_of_five) {
  if (!fs::exists(run.decode())) throw ConfigError("missing decode dump " + run.decode().string());
  const Metrics m = compute_metrics(parse_jsonl(read_text_file(run.decode())), workspace.split.test,
                                    workspace.database, mean_of_five);
  write_text_file(run.metrics(), metrics_csv(m));
  return m;
}

std::vector<ConfigRuns> scan_runs(const fs::path& root) {
  std::vector<ConfigRuns> out;
  if (!fs::is_directory(root)) return out;
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.is_directory() && fs::exists(e.path() / "config.json")) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& d : dirs) {
    ConfigRuns cr;
    cr.dir = d;
    cr.config = TrainConfig::from_json(read_json_file(d / "config.json"));
    std::map<std::uint64_t, RunPaths> seeds;
    for (const auto& e : fs::directory_iterator(d)) {
      if (!e.is_directory()) continue;
      const std::string name = e.path().filename().string();
      if (name.empty() || !std::all_of(name.begin(), name.end(), ::isdigit)) continue;
      seeds[std::stoull(name)] = RunPaths{e.path()};
    }
    for (auto& [seed, paths] : seeds) cr.seeds.push_back(paths);
    out.push_back(std::move(cr));
  }
  return out;
}

std::string arch_label(const ModelConfig& config) {
  return to_string(config.variant) + (config.attention ? "+att" : "");
}

ResultsTable build_results(const std::vector<ConfigRuns>& runs, const Workspace& workspace,
                           bool mean_of_five) {
  ResultsTable table;
  std::map<std::size_t, std::vector<Metrics>> per_config;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    auto& scores = per_config[k];
    for (const auto& seed : runs[k].seeds) {
      if (!fs::exists(seed.decode())) {
        table.incomplete.push_back(seed.dir.generic_string());
        continue;
      }
      scores.push_back(eval_run(seed, workspace, mean_of_five));
    }
  }
  auto same = [](const ModelConfig& a, const ModelConfig& b) {
    return a.variant == b.variant && a.attention == b.attention && a.belief == b.belief &&
           a.snapshot == b.snapshot;
  };
  auto row_for = [&](std::size_t k) {
    const ModelConfig& m = runs[k].config.model;
    return ReportRow{arch_label(m), to_string(m.belief), m.snapshot, aggregate(per_config[k])};
  };
  std::vector<bool> used(runs.size(), false);
  for (const auto& g : experiment_grid()) {
    for (bool snap : {false, true}) {
      ModelConfig want = g.model;
      want.snapshot = snap;
      for (std::size_t k = 0; k < runs.size(); ++k) {
        if (same(runs[k].config.model, want)) {
          table.rows.push_back(row_for(k));
          used[k] = true;
          break;
        }
      }
    }
  }
  for (std::size_t k = 0; k < runs.size(); ++k) {
    if (!used[k]) table.rows.push_back(row_for(k));
  }
  return table;
}

}  // namespace snapdial
