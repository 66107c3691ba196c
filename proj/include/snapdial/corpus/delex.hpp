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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snapdial/corpus/dialogue.hpp"

namespace snapdial {

// Lowercases and splits on whitespace; , . ? ! become separate tokens.
Tokens tokenize(std::string_view text);
std::string join_tokens(const Tokens& tokens, std::string_view sep = " ");

enum class MentionKind { kValue, kSlotName };

// A matched ontology/database phrase in a token sequence.
struct Mention {
  std::size_t begin = 0;
  std::size_t end = 0;  // one past the last token
  MentionKind kind = MentionKind::kValue;
  std::string slot;   // "name" for venue names
  std::string value;  // canonical value string (empty for slot names)

  std::string token() const {
    return (kind == MentionKind::kValue ? "[v." : "[s.") + slot + "]";
  }
};

// Phrase table for delexicalisation: venue names, informable values, venue
// attribute values and slot-name phrases. Matching is case-insensitive and
// longest-match-first; equal-length ties resolve in the order
// name > informable value > attribute value > slot name.
class Lexicon {
 public:
  Lexicon(const Ontology& ontology, const Database& database);

  std::vector<Mention> find_mentions(const Tokens& tokens) const;
  Tokens delexicalise(const Tokens& tokens) const;

  struct Entry {
    Tokens phrase;
    MentionKind kind;
    std::string slot;
    std::string value;
    int priority;
  };
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
  // first token -> entry indices sorted by (length desc, priority asc)
  std::map<std::string, std::vector<std::size_t>> by_first_;
};

// Beliefs used to fill informable [v.slot] tokens when no venue is offered.
using TopValues = std::map<std::string, std::string>;

// Substitutes [v.slot] with the entity's value (or, for informable slots
// without an entity, the top belief value) and [s.slot] with the slot's
// display name. The end-of-sentence token is dropped. Throws
// LexicalisationError naming the first token with no substitution.
std::string lexicalise(const Tokens& skeletal, const Ontology& ontology,
                       const Entity* entity, const TopValues& top_values = {});

// Same as lexicalise but never throws: tokens that cannot be filled are
// kept and wrapped as <<token>>. Returns whether everything was filled.
bool lexicalise_marked(const Tokens& skeletal, const Ontology& ontology,
                       const Entity* entity, const TopValues& top_values,
                       std::string& out);

}  // namespace snapdial
