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
#include <map>
#include <string>
#include <vector>

#include "snapdial/corpus/ontology.hpp"

namespace snapdial {

inline constexpr const char* kPadToken = "<pad>";
inline constexpr const char* kUnkToken = "<unk>";
inline constexpr const char* kBosToken = "<s>";
inline constexpr const char* kEosToken = "</s>";

using Tokens = std::vector<std::string>;

struct Goal {
  // informable slot -> value or "dontcare"
  std::map<std::string, std::string> constraints;
  std::vector<std::string> requests;

  // Database constraints implied by the goal (dontcare -> unconstrained).
  Constraints as_constraints() const;
};

// Gold tracker labels after a user turn.
struct TurnLabels {
  // informable slot -> value, "dontcare" or "none"
  std::map<std::string, std::string> informable;
  // requestable slot -> requested in this turn
  std::map<std::string, int> requestable;

  // Class index per informable slot in tracker order: value index,
  // |values| for dontcare, |values| + 1 for not mentioned.
  std::size_t informable_class(const Ontology& ontology,
                               const std::string& slot) const;
  Constraints as_constraints() const;
};

struct Turn {
  Tokens user;          // delexicalised user tokens
  Tokens user_surface;  // lexical user tokens (tracker input)
  Tokens sys;           // delexicalised system tokens, ends with </s>
  TurnLabels labels;
  int db_match = 0;
};

struct Dialogue {
  std::string id;
  Goal goal;
  std::vector<Turn> turns;
};

struct Corpus {
  Ontology ontology;
  std::vector<Dialogue> dialogues;

  Json to_json() const;
  static Corpus from_json(const Json& json);
  void save(const std::filesystem::path& path) const;
  static Corpus load(const std::filesystem::path& path);
};

// Checks delexicalised tokens against the ontology: every bracketed token
// must be [v.slot] or [s.slot] for a known slot (or [v.name]).
bool is_delex_token(const std::string& token);
bool valid_delex_token(const std::string& token, const Ontology& ontology);

}  // namespace snapdial
