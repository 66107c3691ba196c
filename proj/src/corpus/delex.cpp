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

#include "snapdial/corpus/delex.hpp"

#include <algorithm>
#include <cctype>

#include "snapdial/error.hpp"

namespace snapdial {

Tokens tokenize(std::string_view text) {
  Tokens out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char raw : text) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == ',' || c == '.' || c == '?' || c == '!') {
      flush();
      out.emplace_back(1, c);
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

std::string join_tokens(const Tokens& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

Lexicon::Lexicon(const Ontology& ontology, const Database& database) {
  auto add = [&](const std::string& surface, MentionKind kind,
                 const std::string& slot, const std::string& value, int priority) {
    Tokens phrase = tokenize(surface);
    if (phrase.empty()) return;
    entries_.push_back({std::move(phrase), kind, slot, value, priority});
  };
  for (const auto& e : database.entities) add(e.name, MentionKind::kValue, "name", e.name, 0);
  for (const auto& slot : ontology.informable) {
    for (const auto& v : slot.values) add(v, MentionKind::kValue, slot.name, v, 1);
  }
  for (const auto& e : database.entities) {
    for (const auto& slot : ontology.requestable) {
      if (ontology.is_informable(slot)) continue;
      add(e.value(slot), MentionKind::kValue, slot, e.value(slot), 2);
    }
  }
  for (const auto& [slot, phrases] : ontology.slot_phrases) {
    for (const auto& p : phrases) add(p, MentionKind::kSlotName, slot, "", 3);
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    by_first_[entries_[i].phrase.front()].push_back(i);
  }
  for (auto& [first, list] : by_first_) {
    std::stable_sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      const auto& ea = entries_[a];
      const auto& eb = entries_[b];
      if (ea.phrase.size() != eb.phrase.size()) return ea.phrase.size() > eb.phrase.size();
      return ea.priority < eb.priority;
    });
  }
}

std::vector<Mention> Lexicon::find_mentions(const Tokens& tokens) const {
  std::vector<Mention> out;
  Tokens lower(tokens.size());
  std::transform(tokens.begin(), tokens.end(), lower.begin(), [](const std::string& t) {
    std::string s = t;
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  });
  std::size_t i = 0;
  while (i < lower.size()) {
    auto it = by_first_.find(lower[i]);
    const Entry* best = nullptr;
    if (it != by_first_.end()) {
      for (std::size_t idx : it->second) {
        const Entry& e = entries_[idx];
        if (i + e.phrase.size() > lower.size()) continue;
        if (std::equal(e.phrase.begin(), e.phrase.end(), lower.begin() + i)) {
          best = &e;
          break;
        }
      }
    }
    if (best == nullptr) {
      ++i;
      continue;
    }
    out.push_back({i, i + best->phrase.size(), best->kind, best->slot, best->value});
    i += best->phrase.size();
  }
  return out;
}

Tokens Lexicon::delexicalise(const Tokens& tokens) const {
  const auto mentions = find_mentions(tokens);
  Tokens out;
  std::size_t i = 0;
  for (const auto& m : mentions) {
    for (; i < m.begin; ++i) out.push_back(tokens[i]);
    out.push_back(m.token());
    i = m.end;
  }
  for (; i < tokens.size(); ++i) out.push_back(tokens[i]);
  return out;
}

namespace {

std::optional<std::string> fill(const std::string& token, const Ontology& ontology,
                                const Entity* entity, const TopValues& top_values) {
  const std::string slot = token.substr(3, token.size() - 4);
  if (token[1] == 's') return ontology.display_name(slot);
  if (entity != nullptr) {
    if (slot == "name") return entity->name;
    auto it = entity->attributes.find(slot);
    if (it != entity->attributes.end()) return it->second;
  }
  if (ontology.is_informable(slot)) {
    auto it = top_values.find(slot);
    if (it != top_values.end() && it->second != kDontCare &&
        it->second != kNotMentioned) {
      return it->second;
    }
  }
  return std::nullopt;
}

}  // namespace

bool lexicalise_marked(const Tokens& skeletal, const Ontology& ontology,
                       const Entity* entity, const TopValues& top_values,
                       std::string& out) {
  Tokens words;
  bool complete = true;
  for (const auto& tok : skeletal) {
    if (tok == kEosToken) continue;
    if (!is_delex_token(tok)) {
      words.push_back(tok);
      continue;
    }
    auto value = fill(tok, ontology, entity, top_values);
    if (value) {
      words.push_back(*value);
    } else {
      words.push_back("<<" + tok + ">>");
      complete = false;
    }
  }
  out = join_tokens(words);
  return complete;
}

std::string lexicalise(const Tokens& skeletal, const Ontology& ontology,
                       const Entity* entity, const TopValues& top_values) {
  for (const auto& tok : skeletal) {
    if (is_delex_token(tok) && !fill(tok, ontology, entity, top_values)) {
      throw LexicalisationError(tok, "no substitution available for " + tok);
    }
  }
  std::string out;
  lexicalise_marked(skeletal, ontology, entity, top_values, out);
  return out;
}

}  // namespace snapdial
