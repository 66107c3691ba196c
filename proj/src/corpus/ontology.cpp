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

#include "snapdial/corpus/ontology.hpp"

#include <algorithm>
#include <set>

#include "snapdial/error.hpp"
#include "snapdial/numerics/rng.hpp"

namespace snapdial {

void Ontology::validate() const {
  if (informable.size() != 3) {
    throw ConfigError("ontology must have 3 informable slots, got " +
                      std::to_string(informable.size()));
  }
  if (requestable.size() != 6) {
    throw ConfigError("ontology must have 6 requestable slots, got " +
                      std::to_string(requestable.size()));
  }
  for (const auto& slot : informable) {
    if (slot.values.empty()) throw ConfigError("slot '" + slot.name + "' has no values");
    std::set<std::string> seen(slot.values.begin(), slot.values.end());
    if (seen.size() != slot.values.size()) {
      throw ConfigError("slot '" + slot.name + "' has duplicate values");
    }
    if (seen.count(kDontCare) || seen.count(kNotMentioned)) {
      throw ConfigError("slot '" + slot.name + "' uses a reserved value");
    }
  }
  std::set<std::string> req(requestable.begin(), requestable.end());
  if (req.size() != requestable.size()) {
    throw ConfigError("duplicate requestable slot");
  }
}

std::size_t Ontology::informable_index(const std::string& slot) const {
  for (std::size_t i = 0; i < informable.size(); ++i) {
    if (informable[i].name == slot) return i;
  }
  throw ConfigError("unknown informable slot '" + slot + "'");
}

bool Ontology::is_informable(const std::string& slot) const {
  return std::any_of(informable.begin(), informable.end(),
                     [&](const InformableSlot& s) { return s.name == slot; });
}

const std::vector<std::string>& Ontology::values(const std::string& slot) const {
  return informable[informable_index(slot)].values;
}

std::optional<std::size_t> Ontology::value_index(const std::string& slot,
                                                 const std::string& value) const {
  const auto& vals = values(slot);
  auto it = std::find(vals.begin(), vals.end(), value);
  if (it == vals.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vals.begin());
}

std::string Ontology::display_name(const std::string& slot) const {
  auto it = slot_phrases.find(slot);
  if (it == slot_phrases.end() || it->second.empty()) return slot;
  return it->second.front();
}

std::vector<std::string> Ontology::tracker_slots() const {
  std::vector<std::string> out;
  for (const auto& s : informable) out.push_back(s.name);
  out.insert(out.end(), requestable.begin(), requestable.end());
  return out;
}

Json Ontology::to_json() const {
  Json j;
  Json inf = Json::object();
  for (const auto& s : informable) inf[s.name] = s.values;
  j["informable"] = inf;
  j["requestable"] = requestable;
  Json names = Json::object();
  for (const auto& slot : tracker_slots()) {
    auto it = slot_phrases.find(slot);
    if (it != slot_phrases.end()) names[slot] = it->second;
  }
  j["slotNames"] = names;
  return j;
}

Ontology Ontology::from_json(const Json& json) {
  Ontology o;
  try {
    for (const auto& [slot, values] : json.at("informable").items()) {
      o.informable.push_back({slot, values.get<std::vector<std::string>>()});
    }
    o.requestable = json.at("requestable").get<std::vector<std::string>>();
    if (json.contains("slotNames")) {
      for (const auto& [slot, phrases] : json.at("slotNames").items()) {
        o.slot_phrases[slot] = phrases.get<std::vector<std::string>>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad ontology: ") + e.what());
  }
  o.validate();
  return o;
}

Ontology make_restaurant_ontology() {
  Ontology o;
  o.informable = {
      {"food",
       {"chinese", "italian", "indian", "british", "french", "thai", "spanish",
        "japanese", "korean", "turkish", "vietnamese", "mediterranean",
        "gastropub", "modern european", "north american"}},
      {"pricerange", {"cheap", "moderate", "expensive"}},
      {"area", {"north", "south", "east", "west", "centre"}},
  };
  o.requestable = {"address", "phone", "postcode", "food", "pricerange", "area"};
  o.slot_phrases = {
      {"food", {"type of food", "cuisine"}},
      {"pricerange", {"price range"}},
      {"area", {"area", "part of town"}},
      {"address", {"address"}},
      {"phone", {"phone number", "telephone"}},
      {"postcode", {"postcode", "post code"}},
  };
  o.validate();
  return o;
}

const std::string& Entity::value(const std::string& slot) const {
  if (slot == "name") return name;
  auto it = attributes.find(slot);
  if (it == attributes.end()) {
    throw ConfigError("entity '" + name + "' has no value for '" + slot + "'");
  }
  return it->second;
}

void Database::validate(const Ontology& ontology) const {
  std::set<std::string> names;
  for (const auto& e : entities) {
    if (!names.insert(e.name).second) {
      throw ConfigError("duplicate entity name '" + e.name + "'");
    }
    for (const auto& slot : ontology.informable) {
      if (!ontology.value_index(slot.name, e.value(slot.name))) {
        throw ConfigError("entity '" + e.name + "' has unknown " + slot.name +
                          " value '" + e.value(slot.name) + "'");
      }
    }
    for (const auto& slot : ontology.requestable) e.value(slot);
  }
}

std::vector<const Entity*> Database::matches(const Constraints& constraints) const {
  std::vector<const Entity*> out;
  for (const auto& e : entities) {
    bool ok = true;
    for (const auto& [slot, value] : constraints) {
      if (value && e.value(slot) != *value) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(&e);
  }
  return out;
}

std::size_t Database::count(const Constraints& constraints) const {
  return matches(constraints).size();
}

const Entity* Database::find(const std::string& name) const {
  for (const auto& e : entities) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

Json Database::to_json() const {
  Json list = Json::array();
  for (const auto& e : entities) {
    Json rec;
    rec["name"] = e.name;
    for (const auto& [slot, value] : e.attributes) rec[slot] = value;
    list.push_back(rec);
  }
  return list;
}

Database Database::from_json(const Json& json) {
  Database db;
  try {
    for (const auto& rec : json) {
      Entity e;
      for (const auto& [key, value] : rec.items()) {
        if (key == "name") {
          e.name = value.get<std::string>();
        } else {
          e.attributes[key] = value.get<std::string>();
        }
      }
      db.entities.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& err) {
    throw FormatError(std::string("bad database: ") + err.what());
  }
  return db;
}

Database make_restaurant_database(const Ontology& ontology, std::size_t size,
                                  std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<std::string> adjectives = {
      "golden", "royal", "little", "old",   "blue",  "red",   "silver",
      "green",  "lucky", "happy",  "jade",  "grand", "rose",  "oak"};
  const std::vector<std::string> nouns = {"house",  "kitchen", "garden", "palace",
                                          "bistro", "table",   "lantern", "dragon",
                                          "tavern", "spoon"};
  // A few names overlap other ontology strings on purpose.
  std::vector<std::string> names = {"thai orchid", "north star",
                                    "the italian corner"};
  std::vector<std::string> pool;
  for (const auto& a : adjectives) {
    for (const auto& n : nouns) pool.push_back(a + " " + n);
  }
  rng.shuffle(pool);
  for (const auto& n : pool) {
    if (names.size() >= size) break;
    names.push_back(n);
  }
  if (names.size() < size) throw ConfigError("not enough venue names");

  const std::vector<std::string> streets = {
      "mill road",    "regent street", "hills road",   "king street",
      "bridge street", "east road",    "trumpington street", "castle hill",
      "newmarket road", "station road", "jesus lane",  "magdalene street"};
  Database db;
  for (std::size_t i = 0; i < size; ++i) {
    Entity e;
    e.name = names[i];
    for (const auto& slot : ontology.informable) {
      e.attributes[slot.name] = rng.pick(slot.values);
    }
    e.attributes["address"] =
        std::to_string(1 + rng.below(99)) + " " + rng.pick(streets);
    std::string phone = "01223 ";
    for (int k = 0; k < 6; ++k) phone += static_cast<char>('0' + rng.below(10));
    e.attributes["phone"] = phone;
    std::string postcode = "cb" + std::to_string(1 + rng.below(5)) + " " +
                           std::to_string(rng.below(10));
    postcode += static_cast<char>('a' + rng.below(26));
    postcode += static_cast<char>('a' + rng.below(26));
    e.attributes["postcode"] = postcode;
    db.entities.push_back(std::move(e));
  }
  db.validate(ontology);
  return db;
}

}  // namespace snapdial
