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
#include <vector>

#include "snapdial/json_io.hpp"

namespace snapdial {

inline constexpr const char* kDontCare = "dontcare";
inline constexpr const char* kNotMentioned = "none";

struct InformableSlot {
  std::string name;
  std::vector<std::string> values;
};

// Domain ontology: informable slots (with categorical values) and
// requestable slots, plus the surface phrases that name each slot.
struct Ontology {
  std::vector<InformableSlot> informable;
  std::vector<std::string> requestable;
  // slot -> surface phrases delexicalised to [s.slot]; the first one is the
  // display name used when lexicalising.
  std::map<std::string, std::vector<std::string>> slot_phrases;

  // Throws ConfigError unless there are exactly 3 informable and 6
  // requestable slots with non-empty, duplicate-free value lists.
  void validate() const;

  std::size_t informable_index(const std::string& slot) const;
  bool is_informable(const std::string& slot) const;
  const std::vector<std::string>& values(const std::string& slot) const;
  // Index of `value` in the slot's value list, if present.
  std::optional<std::size_t> value_index(const std::string& slot,
                                         const std::string& value) const;
  std::string display_name(const std::string& slot) const;

  // Tracker order: informable slots, then requestable slots.
  std::vector<std::string> tracker_slots() const;

  Json to_json() const;
  static Ontology from_json(const Json& json);
};

// Restaurant-domain ontology: food / pricerange / area informable,
// address / phone / postcode plus the informables requestable.
Ontology make_restaurant_ontology();

struct Entity {
  std::string name;
  // slot -> value, for every informable and requestable slot.
  std::map<std::string, std::string> attributes;

  const std::string& value(const std::string& slot) const;
};

// Per-informable-slot constraint; nullopt means unconstrained.
using Constraints = std::map<std::string, std::optional<std::string>>;

struct Database {
  std::vector<Entity> entities;

  void validate(const Ontology& ontology) const;
  std::vector<const Entity*> matches(const Constraints& constraints) const;
  std::size_t count(const Constraints& constraints) const;
  const Entity* find(const std::string& name) const;

  Json to_json() const;
  static Database from_json(const Json& json);
};

// 99 venues with unique names, seeded from a fixed stream so every corpus
// shares the same table.
Database make_restaurant_database(const Ontology& ontology,
                                  std::size_t size = 99,
                                  std::uint64_t seed = 20160901);

}  // namespace snapdial
