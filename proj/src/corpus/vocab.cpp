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

#include "snapdial/corpus/vocab.hpp"

#include <algorithm>
#include <map>

#include "snapdial/error.hpp"
#include "snapdial/json_io.hpp"

namespace snapdial {

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], static_cast<int>(i)).second) {
      throw ConfigError("duplicate vocabulary token '" + tokens_[i] + "'");
    }
  }
  if (tokens_.size() < 4 || tokens_[kPad] != kPadToken || tokens_[kUnk] != kUnkToken ||
      tokens_[kBos] != kBosToken || tokens_[kEos] != kEosToken) {
    throw ConfigError("vocabulary must start with <pad> <unk> <s> </s>");
  }
}

int Vocabulary::id(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(const std::string& token) const {
  return index_.count(token) != 0;
}

std::vector<int> Vocabulary::encode(const Tokens& tokens) const {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(id(t));
  return out;
}

Tokens Vocabulary::decode(const std::vector<int>& ids) const {
  Tokens out;
  out.reserve(ids.size());
  for (int i : ids) out.push_back(token(i));
  return out;
}

std::string Vocabulary::hash() const {
  std::uint64_t h = fnv1a("");
  for (const auto& t : tokens_) {
    h = fnv1a(t, h);
    h = fnv1a("\n", h);
  }
  return hex64(h);
}

std::vector<std::string> special_tokens(const Ontology& ontology) {
  std::vector<std::string> out = {kPadToken, kUnkToken, kBosToken, kEosToken};
  out.push_back("[v.name]");
  for (const auto& slot : ontology.tracker_slots()) {
    const std::string v = "[v." + slot + "]";
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  for (const auto& slot : ontology.tracker_slots()) {
    const std::string s = "[s." + slot + "]";
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

Vocabulary build_vocab(const std::vector<Dialogue>& dialogues,
                       const Ontology& ontology, int min_count) {
  if (dialogues.empty()) throw ConfigError("cannot build a vocabulary from an empty corpus");
  std::map<std::string, long> counts;
  for (const auto& d : dialogues) {
    for (const auto& t : d.turns) {
      for (const auto& w : t.user) ++counts[w];
      for (const auto& w : t.sys) ++counts[w];
    }
  }
  std::vector<std::string> tokens = special_tokens(ontology);
  std::unordered_map<std::string, int> seen;
  for (const auto& t : tokens) seen.emplace(t, 0);
  for (const auto& [word, count] : counts) {
    if (count >= min_count && !seen.count(word)) tokens.push_back(word);
  }
  return Vocabulary(std::move(tokens));
}

}  // namespace snapdial
