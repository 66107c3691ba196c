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

#include "snapdial/corpus/dialogue.hpp"

#include <algorithm>

#include "snapdial/error.hpp"

namespace snapdial {

Constraints Goal::as_constraints() const {
  Constraints out;
  for (const auto& [slot, value] : constraints) {
    out[slot] = value == kDontCare ? std::nullopt : std::optional(value);
  }
  return out;
}

std::size_t TurnLabels::informable_class(const Ontology& ontology,
                                         const std::string& slot) const {
  const auto& values = ontology.values(slot);
  auto it = informable.find(slot);
  if (it == informable.end() || it->second == kNotMentioned) return values.size() + 1;
  if (it->second == kDontCare) return values.size();
  auto idx = ontology.value_index(slot, it->second);
  if (!idx) throw FormatError("label value '" + it->second + "' not in slot " + slot);
  return *idx;
}

Constraints TurnLabels::as_constraints() const {
  Constraints out;
  for (const auto& [slot, value] : informable) {
    if (value == kDontCare || value == kNotMentioned) {
      out[slot] = std::nullopt;
    } else {
      out[slot] = value;
    }
  }
  return out;
}

bool is_delex_token(const std::string& token) {
  return token.size() > 4 && token.front() == '[' && token.back() == ']' &&
         (token.compare(0, 3, "[v.") == 0 || token.compare(0, 3, "[s.") == 0);
}

bool valid_delex_token(const std::string& token, const Ontology& ontology) {
  if (!is_delex_token(token)) return false;
  const std::string slot = token.substr(3, token.size() - 4);
  if (token[1] == 'v' && slot == "name") return true;
  const auto slots = ontology.tracker_slots();
  return std::find(slots.begin(), slots.end(), slot) != slots.end();
}

Json Corpus::to_json() const {
  Json j;
  j["ontology"] = ontology.to_json();
  Json list = Json::array();
  for (const auto& d : dialogues) {
    Json jd;
    jd["id"] = d.id;
    Json goal;
    Json cons = Json::object();
    for (const auto& s : ontology.informable) {
      auto it = d.goal.constraints.find(s.name);
      if (it != d.goal.constraints.end()) cons[s.name] = it->second;
    }
    goal["constraints"] = cons;
    goal["requests"] = d.goal.requests;
    jd["goal"] = goal;
    Json turns = Json::array();
    for (const auto& t : d.turns) {
      Json jt;
      jt["user"] = t.user;
      jt["userSurface"] = t.user_surface;
      jt["sys"] = t.sys;
      Json labels = Json::object();
      for (const auto& s : ontology.informable) {
        auto it = t.labels.informable.find(s.name);
        labels[s.name] = it == t.labels.informable.end() ? kNotMentioned : it->second;
      }
      Json req = Json::object();
      for (const auto& r : ontology.requestable) {
        auto it = t.labels.requestable.find(r);
        req[r] = it == t.labels.requestable.end() ? 0 : it->second;
      }
      labels["requestable"] = req;
      jt["labels"] = labels;
      jt["dbMatch"] = t.db_match;
      turns.push_back(jt);
    }
    jd["turns"] = turns;
    list.push_back(jd);
  }
  j["dialogues"] = list;
  return j;
}

Corpus Corpus::from_json(const Json& json) {
  Corpus c;
  c.ontology = Ontology::from_json(json.at("ontology"));
  try {
    for (const auto& jd : json.at("dialogues")) {
      Dialogue d;
      d.id = jd.at("id").get<std::string>();
      for (const auto& [slot, value] : jd.at("goal").at("constraints").items()) {
        d.goal.constraints[slot] = value.get<std::string>();
      }
      d.goal.requests = jd.at("goal").at("requests").get<std::vector<std::string>>();
      for (const auto& jt : jd.at("turns")) {
        Turn t;
        t.user = jt.at("user").get<Tokens>();
        if (jt.contains("userSurface")) {
          t.user_surface = jt.at("userSurface").get<Tokens>();
        } else {
          t.user_surface = t.user;
        }
        t.sys = jt.at("sys").get<Tokens>();
        for (const auto& [key, value] : jt.at("labels").items()) {
          if (key == "requestable") {
            for (const auto& [slot, flag] : value.items()) {
              t.labels.requestable[slot] = flag.get<int>();
            }
          } else {
            t.labels.informable[key] = value.get<std::string>();
          }
        }
        t.db_match = jt.at("dbMatch").get<int>();
        if (t.sys.empty()) throw FormatError("dialogue " + d.id + " has an empty system turn");
        d.turns.push_back(std::move(t));
      }
      if (d.turns.empty()) throw FormatError("dialogue " + d.id + " has no turns");
      c.dialogues.push_back(std::move(d));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad corpus: ") + e.what());
  }
  return c;
}

void Corpus::save(const std::filesystem::path& path) const {
  write_json_file(path, to_json());
}

Corpus Corpus::load(const std::filesystem::path& path) {
  return from_json(read_json_file(path));
}

}  // namespace snapdial
