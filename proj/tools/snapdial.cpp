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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snapdial/analysis/analysis.hpp"
#include "snapdial/app/runs.hpp"
#include "snapdial/app/workspace.hpp"
#include "snapdial/error.hpp"
#include "snapdial/numerics/kernels.hpp"
#include "snapdial/server/service.hpp"

namespace fs = std::filesystem;
using namespace snapdial;

namespace {

// Bad or missing inputs; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runtime failure inside a named stage; exit code 1.
class StageFailure : public std::runtime_error {
 public:
  StageFailure(std::string stage, const std::string& message)
      : std::runtime_error(message), stage(std::move(stage)) {}
  std::string stage;
};

template <typename F>
auto in_stage(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const UsageError&) {
    throw;
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  } catch (const StageFailure&) {
    throw;
  } catch (const StageError& e) {
    throw StageFailure(e.stage(), e.what());
  } catch (const std::exception& e) {
    throw StageFailure(stage, e.what());
  }
}

void say(const std::string& line) { std::cerr << line << std::endl; }

struct Common {
  std::string corpus = "corpus";
  std::string out;
  std::string config;
  std::string checkpoint;
  std::string runs = "runs";
  std::uint64_t seed = 1;
  int seeds = 1;
  int threads = 1;
};

struct ModelFlags {
  std::string variant;
  std::string belief;
  int attention = 0;  // +1 on, -1 off, 0 unset
  int snapshot = 0;
  std::optional<std::size_t> hidden;
  std::optional<double> lambda, init_range, lr, l2, clip;
  std::optional<std::string> clip_mode;
  std::optional<int> patience, max_epochs;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--variant", f.variant, "Decoder cell: lm, mem or hybrid")
      ->check(CLI::IsMember({"lm", "mem", "hybrid"}));
  cmd->add_flag("--attention,!--no-attention", f.attention, "Attention over the belief trackers");
  cmd->add_flag("--snapshot,!--no-snapshot", f.snapshot, "Snapshot learning");
  cmd->add_option("--belief", f.belief, "Belief representation: full or summary")
      ->check(CLI::IsMember({"full", "summary"}));
  cmd->add_option("--hidden", f.hidden, "Hidden size (model.hidden)");
  cmd->add_option("--lambda", f.lambda, "Snapshot loss weight (model.lambda)");
  cmd->add_option("--init-range", f.init_range, "Uniform init range (model.initRange)");
  cmd->add_option("--lr", f.lr, "SGD learning rate (learningRate)");
  cmd->add_option("--l2", f.l2, "L2 weight decay (l2)");
  cmd->add_option("--clip", f.clip, "Gradient clip threshold (clip)");
  cmd->add_option("--clip-mode", f.clip_mode, "Clipping: norm, element or none (clipMode)")
      ->check(CLI::IsMember({"norm", "element", "none"}));
  cmd->add_option("--patience", f.patience, "Early-stopping patience in epochs (patience)");
  cmd->add_option("--max-epochs", f.max_epochs, "Epoch limit (maxEpochs)");
}

TrainConfig resolve_config(const Common& c, const ModelFlags& f) {
  Json j = TrainConfig{}.to_json();
  if (!c.config.empty()) {
    if (!fs::exists(c.config)) throw UsageError("config file not found: " + c.config);
    for (const auto& [k, v] : read_json_file(c.config).items()) j[k] = v;
  }
  if (!f.variant.empty()) j["variant"] = f.variant;
  if (!f.belief.empty()) j["belief"] = f.belief;
  if (f.attention) j["attention"] = f.attention > 0;
  if (f.snapshot) j["snapshot"] = f.snapshot > 0;
  if (f.hidden) j["hidden"] = *f.hidden;
  if (f.lambda) j["lambda"] = *f.lambda;
  if (f.init_range) j["initRange"] = *f.init_range;
  if (f.lr) j["learningRate"] = *f.lr;
  if (f.l2) j["l2"] = *f.l2;
  if (f.clip) j["clip"] = *f.clip;
  if (f.clip_mode) j["clipMode"] = *f.clip_mode;
  if (f.patience) j["patience"] = *f.patience;
  if (f.max_epochs) j["maxEpochs"] = *f.max_epochs;
  j["seed"] = c.seed;
  try {
    return TrainConfig::from_json(j);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::uint64_t> seed_list(const Common& c) {
  if (c.seeds < 1) throw UsageError("--seeds must be at least 1");
  std::vector<std::uint64_t> out;
  for (int i = 0; i < c.seeds; ++i) out.push_back(c.seed + static_cast<std::uint64_t>(i));
  return out;
}

Workspace open_workspace(const Common& c) {
  return in_stage("load-corpus", [&] { return load_workspace(CorpusPaths{c.corpus}); });
}

TrackerModel open_trackers(const Common& c, const Database& db) {
  const CorpusPaths paths{c.corpus};
  if (!fs::exists(paths.trackers())) {
    throw UsageError("no trackers in " + c.corpus + "; run train-trackers first");
  }
  return in_stage("load-trackers", [&] { return TrackerModel::load(paths.trackers(), db); });
}

std::string safe_name(std::string s) {
  for (char& ch : s) {
    if (ch == '/' || ch == '+') ch = '_';
  }
  return s;
}

int cmd_gen_corpus(const Common& c, std::size_t dialogues, int min_count) {
  const fs::path out = c.out.empty() ? fs::path(c.corpus) : fs::path(c.out);
  const Workspace ws =
      in_stage("generate", [&] { return make_workspace(dialogues, c.seed, min_count); });
  in_stage("write", [&] {
    const CorpusPaths paths{out};
    save_workspace(ws, paths);
    write_manifest(out, Json{{"command", "gen-corpus"},
                             {"dialogues", dialogues},
                             {"seed", c.seed},
                             {"minCount", min_count},
                             {"vocabSize", ws.vocab.size()},
                             {"split", Json{{"train", ws.split.train.size()},
                                            {"valid", ws.split.valid.size()},
                                            {"test", ws.split.test.size()}}}});
    return 0;
  });
  std::printf("wrote %zu dialogues (%zu/%zu/%zu), vocabulary %zu, to %s\n", dialogues,
              ws.split.train.size(), ws.split.valid.size(), ws.split.test.size(), ws.vocab.size(),
              out.string().c_str());
  return 0;
}

int cmd_train_trackers(const Common& c) {
  const Workspace ws = open_workspace(c);
  TrackerTrainOptions opt;
  opt.seed = c.seed;
  TrackerHistory hist;
  const TrackerModel model = in_stage("train-trackers", [&] {
    return train_trackers(ws.corpus.ontology, ws.database, ws.split.train, ws.split.valid, opt,
                          &hist);
  });
  const CorpusPaths paths{c.corpus};
  const fs::path out = c.out.empty() ? paths.trackers() : fs::path(c.out);
  const auto acc = tracker_accuracy(model, ws.split.test);
  in_stage("write", [&] {
    model.save(out);
    write_json_file(out.parent_path() / "tracker_report.json",
                    Json{{"bestEpoch", hist.best_epoch},
                         {"trainLoss", hist.train_loss},
                         {"validLoss", hist.valid_loss},
                         {"testAccuracy", acc},
                         {"parameterHash", model.parameter_hash()}});
    return 0;
  });
  for (const auto& [slot, a] : acc) std::printf("%-16s %.4f\n", slot.c_str(), a);
  std::printf("trackers written to %s\n", out.string().c_str());
  return 0;
}

int cmd_train(const Common& c, const ModelFlags& f, bool grid) {
  const Workspace ws = open_workspace(c);
  const TrackerModel tracker = open_trackers(c, ws.database);
  const RunEnv env{&ws, &tracker, file_hash(CorpusPaths{c.corpus}.corpus())};
  const fs::path root = c.out.empty() ? fs::path(c.runs) : fs::path(c.out);
  const TrainConfig base = resolve_config(c, f);
  std::vector<TrainConfig> configs;
  if (grid) {
    std::vector<std::string> seen;
    for (const auto& row : experiment_grid()) {
      for (bool snap : {false, true}) {
        TrainConfig t = base;
        t.model.variant = row.model.variant;
        t.model.attention = row.model.attention;
        t.model.belief = row.model.belief;
        t.model.snapshot = snap;
        if (std::find(seen.begin(), seen.end(), t.hash()) != seen.end()) continue;
        seen.push_back(t.hash());
        configs.push_back(t);
      }
    }
  } else {
    configs.push_back(base);
  }
  const auto seeds = seed_list(c);
  std::size_t failed = 0;
  for (const auto& config : configs) {
    say("training " + config.model.label() + " -> " + (root / config.hash()).string());
    const auto done = in_stage("train", [&] {
      return train_runs(config, seeds, env, root, c.threads, say);
    });
    failed += seeds.size() - done.size();
  }
  if (failed > 0) throw StageFailure("train", std::to_string(failed) + " seed run(s) failed");
  return 0;
}

int cmd_decode(const Common& c, const BeamOptions& beam) {
  const Workspace ws = open_workspace(c);
  const TrackerModel tracker = open_trackers(c, ws.database);
  const RunEnv env{&ws, &tracker, ""};
  std::vector<RunPaths> targets;
  if (!c.checkpoint.empty()) {
    if (!fs::exists(c.checkpoint)) throw UsageError("checkpoint not found: " + c.checkpoint);
    RunPaths p{fs::path(c.checkpoint).parent_path()};
    const Checkpoint ck = in_stage("load-checkpoint", [&] { return load_checkpoint(c.checkpoint); });
    const auto dump = in_stage("decode", [&] {
      return decode_corpus(ck.model, env.pipeline(), ws.split.test, beam);
    });
    const fs::path out = c.out.empty() ? p.decode() : fs::path(c.out);
    write_text_file(out, dump_jsonl(dump));
    std::printf("%zu turns decoded to %s\n", dump.size(), out.string().c_str());
    return 0;
  }
  const auto runs = in_stage("scan", [&] { return scan_runs(c.runs); });
  if (runs.empty()) throw UsageError("no runs under " + c.runs + " and no --checkpoint given");
  for (const auto& cr : runs) {
    for (const auto& seed : cr.seeds) {
      if (!fs::exists(seed.checkpoint())) continue;
      in_stage("decode", [&] { return decode_run(seed, env, beam); });
      say("decoded " + seed.decode().string());
    }
  }
  return 0;
}

int cmd_eval(const Common& c, bool mean_of_five) {
  const Workspace ws = open_workspace(c);
  const auto runs = in_stage("scan", [&] { return scan_runs(c.runs); });
  if (runs.empty()) throw UsageError("no runs under " + c.runs);
  const ResultsTable table = in_stage("eval", [&] { return build_results(runs, ws, mean_of_five); });
  const fs::path out = c.out.empty() ? fs::path("results") : fs::path(c.out);
  fs::create_directories(out);
  const std::string csv = report_csv(table.rows);
  write_text_file(out / "results.csv", csv);
  Json j{{"rows", report_json(table.rows)}, {"incomplete", table.incomplete},
         {"t5", mean_of_five ? "mean-of-5" : "best-of-5"}};
  write_json_file(out / "results.json", j);
  std::fputs(csv.c_str(), stdout);
  for (const auto& d : table.incomplete) say("incomplete (no decode dump): " + d);
  return 0;
}

void analyze_checkpoint(const fs::path& ck_path, const Workspace& ws, const TrackerModel& tracker,
                        const fs::path& out, std::size_t n_dialogues, std::vector<GateStats>& gates,
                        Json& entropy) {
  const Checkpoint ck = in_stage("load-checkpoint", [&] { return load_checkpoint(ck_path); });
  const Pipeline env{&ws.corpus.ontology, &ws.database, &tracker, &ck.vocab};
  const Model& model = ck.model;
  const std::string label = model.config().label();
  ModelConfig prep = model.config();
  prep.snapshot = false;
  const auto test = prepare_dialogues(ws.split.test, env, prep, model.indicators());
  gates.push_back(in_stage("gates", [&] { return gate_stats(model, test); }));
  const BeamOptions beam;
  const std::size_t n = std::min(n_dialogues, ws.split.test.size());
  for (std::size_t d = 0; d < n; ++d) {
    const Dialogue& dialogue = ws.split.test[d];
    for (std::size_t t = 0; t < dialogue.turns.size(); ++t) {
      const TurnReplay replay = in_stage("replay", [&] {
        return replay_turn(model, env, dialogue, t, beam);
      });
      const std::string name = dialogue.id + "_" + std::to_string(t) + ".json";
      if (model.config().attention) {
        fs::create_directories(out / "heatmaps" / safe_name(label));
        write_json_file(out / "heatmaps" / safe_name(label) / name,
                        attention_heatmap(model, ws.corpus.ontology, replay).to_json());
      }
      if (model.config().snapshot) {
        fs::create_directories(out / "traces" / safe_name(label));
        write_json_file(out / "traces" / safe_name(label) / name,
                        snapshot_trace(model, replay).to_json());
      }
    }
  }
  if (model.config().attention) {
    const double h = in_stage("entropy", [&] {
      return mean_attention_entropy(model, env, ws.split.test, beam);
    });
    entropy.push_back(Json{{"config", label},
                           {"arch", arch_label(model.config())},
                           {"belief", to_string(model.config().belief)},
                           {"snapshot", model.config().snapshot},
                           {"checkpoint", ck_path.generic_string()},
                           {"meanRowEntropy", h}});
  }
}

int cmd_analyze(const Common& c, std::size_t n_dialogues) {
  const Workspace ws = open_workspace(c);
  const TrackerModel tracker = open_trackers(c, ws.database);
  const fs::path out = c.out.empty() ? fs::path("analysis") : fs::path(c.out);
  fs::create_directories(out);
  std::vector<fs::path> checkpoints;
  if (!c.checkpoint.empty()) {
    if (!fs::exists(c.checkpoint)) throw UsageError("checkpoint not found: " + c.checkpoint);
    checkpoints.push_back(c.checkpoint);
  } else {
    const auto runs = in_stage("scan", [&] { return scan_runs(c.runs); });
    for (const auto& cr : runs) {
      for (const auto& s : cr.seeds) {
        if (s.dir.filename() == std::to_string(c.seed) && fs::exists(s.checkpoint())) {
          checkpoints.push_back(s.checkpoint());
        }
      }
    }
    if (checkpoints.empty()) {
      throw UsageError("no checkpoint for seed " + std::to_string(c.seed) + " under " + c.runs);
    }
  }
  std::vector<GateStats> gates;
  Json entropy = Json::array();
  for (const auto& ck : checkpoints) {
    say("analyzing " + ck.string());
    analyze_checkpoint(ck, ws, tracker, out, n_dialogues, gates, entropy);
  }
  write_text_file(out / "gates.csv", gates_csv(gates));
  Json gj = Json::array();
  for (const auto& g : gates) gj.push_back(g.to_json());
  write_json_file(out / "gates.json", gj);
  write_json_file(out / "entropy.json", entropy);
  write_manifest(out, Json{{"command", "analyze"}, {"seed", c.seed}});
  std::fputs(gates_csv(gates).c_str(), stdout);
  return 0;
}

std::shared_ptr<const Bundle> open_bundle(const Common& c, bool required) {
  if (c.checkpoint.empty()) {
    if (required) throw UsageError("--checkpoint is required");
    return nullptr;
  }
  if (!fs::exists(c.checkpoint)) throw UsageError("checkpoint not found: " + c.checkpoint);
  return in_stage("load", [&] { return load_bundle(CorpusPaths{c.corpus}, c.checkpoint); });
}

int cmd_serve(const Common& c, const std::string& host, int port) {
  auto bundle = open_bundle(c, false);
  if (!bundle) say("no checkpoint given; model endpoints answer 503");
  ChatService service(bundle, c.seed);
  HttpServer server(service);
  const int bound = server.bind(host, port);
  if (bound < 0) throw StageFailure("serve", "cannot bind " + host + ":" + std::to_string(port));
  std::printf("listening on http://%s:%d\n", host.c_str(), bound);
  std::fflush(stdout);
  if (!server.listen()) throw StageFailure("serve", "server stopped with an error");
  return 0;
}

int cmd_chat(const Common& c, bool verbose) {
  auto bundle = open_bundle(c, true);
  const Agent agent = bundle->agent();
  DialogueState state(bundle->workspace.corpus.ontology, c.seed);
  std::printf("[%s] type /quit to leave\n", bundle->checkpoint->model.config().label().c_str());
  std::string line;
  while (true) {
    std::printf("user> ");
    std::fflush(stdout);
    if (!std::getline(std::cin, line) || line == "/quit") break;
    if (tokenize(line).empty()) continue;
    try {
      const Response r = respond(agent, state, line);
      std::printf("system> %s\n", r.surface.c_str());
      if (verbose) std::printf("  skeletal: %s\n", join_tokens(r.skeletal).c_str());
    } catch (const StageError& e) {
      std::printf("error [%s]: %s\n", e.stage().c_str(), e.what());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional LSTM dialogue generators with snapshot learning"};
  app.require_subcommand(1);
  Common c;
  ModelFlags flags;
  std::string kernels;
  app.add_option("--kernels", kernels, "Force a kernel set (scalar or avx2)");

  auto corpus_opt = [&](CLI::App* cmd) {
    cmd->add_option("--corpus", c.corpus, "Corpus directory")->capture_default_str();
  };

  auto* gen = app.add_subcommand("gen-corpus", "Generate the synthetic restaurant corpus");
  std::size_t n_dialogues = 500;
  int min_count = 2;
  gen->add_option("--out", c.out, "Output directory (default: --corpus)");
  corpus_opt(gen);
  gen->add_option("--dialogues", n_dialogues, "Number of dialogues")->capture_default_str();
  gen->add_option("--seed", c.seed, "Generator seed")->capture_default_str();
  gen->add_option("--min-count", min_count, "Vocabulary frequency cut-off")->capture_default_str();

  auto* trk = app.add_subcommand("train-trackers", "Train the belief trackers");
  corpus_opt(trk);
  trk->add_option("--out", c.out, "Tracker file (default: <corpus>/trackers.json)");
  trk->add_option("--seed", c.seed, "Seed")->capture_default_str();

  auto* train = app.add_subcommand("train", "Train generators into runs/<config-hash>/<seed>/");
  bool grid = false;
  corpus_opt(train);
  train->add_option("--config", c.config, "JSON training config; flags override it");
  train->add_option("--out", c.out, "Runs root (default: runs)");
  train->add_option("--seed", c.seed, "First seed")->capture_default_str();
  train->add_option("--seeds", c.seeds, "Number of consecutive seeds")->capture_default_str();
  train->add_option("--threads", c.threads, "Parallel seed runs")->capture_default_str();
  train->add_flag("--grid", grid, "Train every results-table configuration, with and without snapshot");
  add_model_flags(train, flags);

  auto* decode = app.add_subcommand("decode", "Beam-decode the test split");
  BeamOptions beam;
  corpus_opt(decode);
  decode->add_option("--checkpoint", c.checkpoint, "Checkpoint to decode (else every run)");
  decode->add_option("--runs", c.runs, "Runs root")->capture_default_str();
  decode->add_option("--out", c.out, "Dump path (with --checkpoint)");
  decode->add_option("--beam-width", beam.width, "Beam width")->capture_default_str();
  decode->add_option("--candidates", beam.n_candidates, "Candidates kept")->capture_default_str();
  decode->add_option("--max-len", beam.max_len, "Maximum response length")->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Score decode dumps and write the results table");
  bool mean_of_five = false;
  corpus_opt(eval);
  eval->add_option("--runs", c.runs, "Runs root")->capture_default_str();
  eval->add_option("--out", c.out, "Output directory (default: results)");
  eval->add_flag("--mean-of-five", mean_of_five, "T5-BLEU as the mean instead of the best of 5");

  auto* analyze = app.add_subcommand("analyze", "Export gate statistics, heat maps and traces");
  std::size_t analyze_dialogues = 3;
  corpus_opt(analyze);
  analyze->add_option("--checkpoint", c.checkpoint, "Checkpoint (else one seed of every run)");
  analyze->add_option("--runs", c.runs, "Runs root")->capture_default_str();
  analyze->add_option("--seed", c.seed, "Seed to analyze with --runs")->capture_default_str();
  analyze->add_option("--out", c.out, "Output directory (default: analysis)");
  analyze->add_option("--dialogues", analyze_dialogues, "Test dialogues exported as heat maps/traces")
      ->capture_default_str();

  auto* serve = app.add_subcommand("serve", "HTTP chat and inspection service");
  std::string host = "127.0.0.1";
  int port = 8080;
  corpus_opt(serve);
  serve->add_option("--checkpoint", c.checkpoint, "Checkpoint to serve");
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Port (0 picks a free one)")->capture_default_str();
  serve->add_option("--seed", c.seed, "Session seed base")->capture_default_str();

  auto* chat = app.add_subcommand("chat", "Terminal conversation with a checkpoint");
  bool verbose = false;
  corpus_opt(chat);
  chat->add_option("--checkpoint", c.checkpoint, "Checkpoint")->required();
  chat->add_option("--seed", c.seed, "Session seed")->capture_default_str();
  chat->add_flag("--verbose", verbose, "Also print skeletal responses");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!kernels.empty() && !kernels::select(kernels)) {
      throw UsageError("unknown or unsupported kernel set: " + kernels);
    }
    if (*gen) return cmd_gen_corpus(c, n_dialogues, min_count);
    if (*trk) return cmd_train_trackers(c);
    if (*train) return cmd_train(c, flags, grid);
    if (*decode) return cmd_decode(c, beam);
    if (*eval) return cmd_eval(c, mean_of_five);
    if (*analyze) return cmd_analyze(c, analyze_dialogues);
    if (*serve) return cmd_serve(c, host, port);
    if (*chat) return cmd_chat(c, verbose);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const StageFailure& e) {
    std::fprintf(stderr, "error [%s]: %s\n", e.stage.c_str(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
