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

#include <string>
#include <unordered_map>
#include <vector>

#include "snapdial/corpus/dialogue.hpp"

namespace snapdial {

// Bijective token <-> index map. Index 0 is padding; the special tokens and
// every delexicalised token of the ontology are always present.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kBos = 2;
  static constexpr int kEos = 3;

  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> tokens);

  int id(const std::string& token) const;  // unknown -> kUnk
  bool contains(const std::string& token) const;
  const std::string& token(int id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  std::vector<int> encode(const Tokens& tokens) const;
  Tokens decode(const std::vector<int>& ids) const;

  std::string hash() const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

// Specials followed by all [v.*]/[s.*] tokens of the ontology, in ontology
// order.
std::vector<std::string> special_tokens(const Ontology& ontology);

// Counts user and system tokens; words seen fewer than `min_count` times map
// to <unk>. Throws ConfigError on an empty corpus.
Vocabulary build_vocab(const std::vector<Dialogue>& dialogues,
                       const Ontology& ontology, int min_count = 2);

}  // namespace snapdial
