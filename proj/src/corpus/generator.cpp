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

#include "snapdial/corpus/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "snapdial/corpus/delex.hpp"
#include "snapdial/error.hpp"

namespace snapdial {

namespace {

using Strings = std::vector<std::string>;

Tokens split_ws(const std::string& text) {
  std::istringstream in(text);
  Tokens out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string replace_all(std::string text, const std::string& key,
                        const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
  return text;
}

std::string join(const Strings& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

// ---------------------------------------------------------------------------
// User side (surface text with real values).

const Strings kOpeners = {"hello", "hi", "hi there", "hello there", "good evening",
                          "good afternoon", "hey", "good morning", "hello ,", "hi ,"};

const Strings kContext = {
    "i am visiting cambridge for the weekend .",
    "we are celebrating my sister 's birthday tonight .",
    "my parents are in town and we want to eat out .",
    "i just finished work and i am starving .",
    "a friend told me to ask you .",
    "we are a group of four people .",
    "it is for a business dinner with some colleagues .",
    "i am planning a date with my girlfriend .",
    "we have been walking around the city all day .",
    "my family is coming to visit next week .",
    "i want to try somewhere new tonight .",
    "i am new to this city .",
    "we will be arriving by train this evening .",
    "it is our wedding anniversary .",
    "my boss asked me to book lunch .",
    "i am meeting an old friend from school .",
    "we just watched a movie at the cinema .",
    "i have guests coming from abroad .",
    "the kids are hungry after swimming .",
    "it is raining so we want somewhere cosy .",
    "i need somewhere to take my grandmother .",
    "we are going to a concert later .",
    "my husband and i are on holiday .",
    "our flight leaves tomorrow morning .",
    "i am writing a review for a local magazine .",
    "we missed breakfast and lunch today .",
    "my colleagues and i are attending a conference .",
    "we would like to sit outside if the weather is good .",
    "my cousin recommended that i ask for advice .",
    "we are staying at a hotel near the station .",
    "the museum closes soon and we will be hungry .",
    "i am hosting a small party for my students .",
    "we cycled along the river this afternoon .",
    "my daughter just graduated from university .",
    "we are tourists from germany .",
    "i forgot to pack any food for the trip .",
    "my phone battery is almost dead so please be quick .",
    "we want to celebrate a promotion .",
    "i am vegetarian but my partner eats everything .",
    "our team won the football match today .",
    "i am looking after my nephew this evening .",
    "we are planning a surprise dinner for a friend .",
    "the weather is lovely today .",
    "i have a meeting nearby tomorrow .",
    "we are visiting the colleges this week .",
    "it is my first time in england .",
    "my neighbours invited us out for a meal .",
    "we have tickets for the theatre at eight .",
    "i want to treat my mother .",
    "we just got off the bus .",
    "i work at the hospital and have a short break .",
    "we are looking for a quiet evening out .",
    "our kitchen is being repaired at the moment .",
    "i am bored of cooking at home .",
    "we are punting on the river later .",
    "my brother is visiting from london .",
    "i have an exam tomorrow so it must be quick .",
    "we are organising a reunion for old classmates .",
    "we spent the morning shopping in the market .",
    "my grandparents are celebrating their golden anniversary .",
    "i need a break from studying in the library .",
    "we are waiting for a taxi outside the cathedral .",
    "i promised my wife a nice evening .",
    "our car broke down near the park .",
    "we are photographers working on a project here .",
    "i am hungry after a long walk by the canal .",
    "my flatmates and i want to eat together .",
    "we are attending a lecture at seven .",
    "i am entertaining clients from japan .",
    "our baby finally fell asleep .",
    "we are rowing in a competition tomorrow .",
    "i moved here last month .",
    "we want dinner before the cinema .",
};

const Strings kInformWrappers = {
    "i am looking for {np}",   "i want {np}",
    "i need {np}",             "can you find me {np}",
    "i would like {np}",       "please help me find {np}",
    "is there {np}",           "find me {np} please",
    "i 'm searching for {np}", "could you recommend {np}",
    "i 'd like to find {np}",  "do you know {np}",
};

const Strings kDontCareClauses = {
    "i don't care about the {S}", "any {S} is fine",
    "the {S} doesn't matter",     "i have no preference for the {S}",
    "any {S} will do",            "i don't mind about the {S}",
    "it does not matter which {S}", "whatever {S} is fine",
};

const Strings kAnswerWrappers = {
    "{f} please",  "i would like {f}", "i want {f}",          "{f}",
    "how about {f}", "i prefer {f}",   "let 's go with {f}",  "{f} would be good",
    "maybe {f}",   "i am looking for {f}",
};

const Strings kChangeWrappers = {
    "how about {f} instead", "what about {f}",         "ok , then {f} please",
    "then try {f}",          "could you try {f}",      "let 's try {f} then",
    "in that case {f}",      "can you look for {f} instead",
    "okay , what about {f} then",
};

const Strings kRequestWrappers = {
    "what is {R}",     "can i have {R}",         "could you give me {R}",
    "may i have {R} please", "i need {R}",       "tell me {R} please",
    "can you tell me {R}",   "i would like {R}", "please give me {R}",
};

const Strings kAcks = {"", "", "sounds good ,", "great ,", "okay ,",
                       "that sounds nice ,", "perfect ,", "lovely ,"};

const Strings kUserBye = {
    "thank you goodbye",        "thanks , bye",
    "that is all , thank you",  "great , thanks a lot , bye",
    "thank you very much , goodbye", "ok thank you , that will be all",
    "perfect , bye",            "cheers , goodbye",
    "thanks for your help , goodbye",
};

// ---------------------------------------------------------------------------
// System side (skeletal, whitespace separated).

const std::map<std::string, Strings> kSysAsk = {
    {"food",
     {"what [s.food] would you like ?", "what kind of food would you like ?",
      "do you have a preference for the [s.food] ?",
      "which [s.food] are you looking for ?", "what [s.food] do you prefer ?",
      "is there any particular [s.food] you would like ?",
      "what sort of food are you in the mood for ?"}},
    {"pricerange",
     {"what [s.pricerange] would you like ?",
      "do you have a [s.pricerange] in mind ?",
      "which [s.pricerange] are you looking for ?",
      "how much would you like to spend ?",
      "would you prefer a particular [s.pricerange] ?", "what is your budget ?",
      "is there a [s.pricerange] you prefer ?"}},
    {"area",
     {"which [s.area] would you like ?", "what [s.area] are you looking for ?",
      "do you have a preferred [s.area] ?", "where in town would you like to eat ?",
      "is there a particular [s.area] you prefer ?",
      "which part of the city do you prefer ?"}},
};

const Strings kSysAskPrefix = {"", "", "okay .", "sure .", "i can help with that .",
                               "no problem ."};

const Strings kSysNoMatch = {
    "sorry , there is no {np} .",        "i am sorry but there is no {np} .",
    "unfortunately there is no {np} .",  "i 'm afraid there is no {np} .",
    "there are no matches for a {np} .", "sorry , i can not find a {np} .",
    "i could not find any {np} , sorry .",
};

const Strings kSysOffer = {
    "[v.name] is {np} .",
    "how about [v.name] ? it is {np} .",
    "i would recommend [v.name] , {np} .",
    "[v.name] is {np} that you might like .",
    "there is [v.name] , {np} .",
    "you might like [v.name] , it is {np} .",
    "[v.name] is a great choice , it is {np} .",
};

const Strings kSysOfferCloser = {
    "would you like more information ?",       "can i help you with anything else ?",
    "shall i give you their details ?",        "it is very popular with locals .",
    "it has excellent reviews .",              "do you want me to tell you more about it ?",
    "it is usually busy at weekends .",        "would you like their contact details ?",
    "they also have a lovely garden .",        "many visitors recommend it .",
};

const std::map<std::string, Strings> kSysAnswerFirst = {
    {"address",
     {"the [s.address] of [v.name] is [v.address]",
      "[v.name] is located at [v.address]", "you can find [v.name] at [v.address]",
      "[v.name] is at [v.address]"}},
    {"phone",
     {"the [s.phone] of [v.name] is [v.phone]", "you can call [v.name] on [v.phone]",
      "[v.name] can be reached on [v.phone]", "the [s.phone] for [v.name] is [v.phone]"}},
    {"postcode",
     {"the [s.postcode] of [v.name] is [v.postcode]",
      "[v.name] has the [s.postcode] [v.postcode]",
      "the [s.postcode] for [v.name] is [v.postcode]"}},
    {"food",
     {"[v.name] serves [v.food] food", "[v.name] is a [v.food] restaurant",
      "the [s.food] at [v.name] is [v.food]"}},
    {"pricerange",
     {"[v.name] is in the [v.pricerange] [s.pricerange]", "[v.name] is [v.pricerange]",
      "the [s.pricerange] of [v.name] is [v.pricerange]"}},
    {"area",
     {"[v.name] is in the [v.area] of town", "[v.name] is located in the [v.area]",
      "the [s.area] of [v.name] is the [v.area]"}},
};

const std::map<std::string, Strings> kSysAnswerNext = {
    {"address",
     {"the [s.address] is [v.address]", "it is located at [v.address]",
      "they are at [v.address]"}},
    {"phone",
     {"the [s.phone] is [v.phone]", "you can call them on [v.phone]",
      "their [s.phone] is [v.phone]"}},
    {"postcode", {"the [s.postcode] is [v.postcode]", "their [s.postcode] is [v.postcode]"}},
    {"food", {"they serve [v.food] food", "it serves [v.food] food"}},
    {"pricerange",
     {"it is in the [v.pricerange] [s.pricerange]", "it is [v.pricerange]"}},
    {"area", {"it is in the [v.area]", "it is in the [v.area] of town"}},
};

const Strings kSysAnswerPrefix = {"", "", "sure ,", "of course ,", "certainly ,",
                                  "no problem ,"};

const Strings kSysBye = {
    "thank you for using our system . goodbye .", "you are welcome . goodbye .",
    "have a nice day . goodbye .",               "enjoy your meal . bye .",
    "thank you , goodbye .",                     "glad i could help . goodbye .",
    "you are welcome , have a great evening .",
};

// Surface phrases users employ for each slot.
const std::map<std::string, Strings> kUserSlotPhrases = {
    {"food", {"type of food", "cuisine"}},
    {"pricerange", {"price range"}},
    {"area", {"area", "part of town"}},
    {"address", {"address"}},
    {"phone", {"phone number", "telephone"}},
    {"postcode", {"postcode", "post code"}},
};

enum class Act { kAsk, kNoMatch, kOffer, kAnswer, kBye };

class DialogueBuilder {
 public:
  DialogueBuilder(const Ontology& ontology, const Database& database,
                  const Lexicon& lexicon, Rng& rng, const GeneratorOptions& options)
      : ontology_(ontology), database_(database), lexicon_(lexicon), rng_(rng),
        options_(options) {}

  Dialogue build(const std::string& id);

 private:
  // Description of a venue with the given informable values. `vals` maps
  // slot -> text to insert (surface values for the user, [v.slot] for the
  // system).
  std::string noun_phrase(const std::map<std::string, std::string>& vals,
                          bool with_article);
  std::string slot_fragment(const std::string& slot, const std::string& value);
  std::string dontcare_clause(const std::string& slot);
  std::string user_phrase(const std::string& slot) {
    return rng_.pick(kUserSlotPhrases.at(slot));
  }
  std::map<std::string, std::string> sys_values() const;

  void user_turn(Turn& turn, const std::string& surface);

  const Ontology& ontology_;
  const Database& database_;
  const Lexicon& lexicon_;
  Rng& rng_;
  const GeneratorOptions& options_;

  std::map<std::string, std::string> mentioned_;  // slot -> value / dontcare
};

std::string DialogueBuilder::noun_phrase(const std::map<std::string, std::string>& vals,
                                         bool with_article) {
  auto get = [&](const char* slot) -> const std::string* {
    auto it = vals.find(slot);
    return it == vals.end() ? nullptr : &it->second;
  };
  const std::string* food = get("food");
  const std::string* price = get("pricerange");
  const std::string* area = get("area");
  const bool food_adj = food && rng_.bernoulli(0.5);
  const bool price_adj = price && rng_.bernoulli(0.7);
  Strings parts;
  if (with_article) parts.push_back("a");
  if (price_adj) parts.push_back(*price);
  if (food_adj) parts.push_back(*food);
  parts.push_back(rng_.bernoulli(0.8) ? "restaurant" : "place");
  if (food && !food_adj) {
    parts.push_back(rng_.pick(Strings{"serving", "that serves", "with"}) + " " + *food +
                    " food");
  }
  if (area) {
    parts.push_back(rng_.pick(Strings{"in the {a}", "in the {a} of town", "on the {a} side"}));
    parts.back() = replace_all(parts.back(), "{a}", *area);
  }
  if (price && !price_adj) {
    parts.push_back("in the " + *price + " " +
                    (vals.at("pricerange").front() == '[' ? std::string("[s.pricerange]")
                                                          : user_phrase("pricerange")));
  }
  return join(parts);
}

std::string DialogueBuilder::slot_fragment(const std::string& slot,
                                           const std::string& value) {
  if (slot == "food") {
    return replace_all(rng_.pick(Strings{"{v} food", "{v}", "some {v} food"}), "{v}", value);
  }
  if (slot == "pricerange") {
    return replace_all(
        rng_.pick(Strings{"{v}", "something {v}", "the {v} price range", "a {v} one"}),
        "{v}", value);
  }
  return replace_all(rng_.pick(Strings{"the {v}", "the {v} of town",
                                       "somewhere in the {v}", "the {v} part of town"}),
                     "{v}", value);
}

std::string DialogueBuilder::dontcare_clause(const std::string& slot) {
  return replace_all(rng_.pick(kDontCareClauses), "{S}", user_phrase(slot));
}

std::map<std::string, std::string> DialogueBuilder::sys_values() const {
  std::map<std::string, std::string> vals;
  for (const auto& [slot, value] : mentioned_) {
    if (value != kDontCare) vals[slot] = "[v." + slot + "]";
  }
  return vals;
}

void DialogueBuilder::user_turn(Turn& turn, const std::string& surface) {
  turn.user_surface = tokenize(surface);
  turn.user = lexicon_.delexicalise(turn.user_surface);
}

Dialogue DialogueBuilder::build(const std::string& id) {
  mentioned_.clear();
  Dialogue d;
  d.id = id;

  // Goal: constraints drawn from a real venue, some relaxed to dontcare.
  const Entity& target = rng_.pick(database_.entities);
  for (const auto& slot : ontology_.informable) {
    d.goal.constraints[slot.name] =
        rng_.bernoulli(options_.dontcare_prob) ? kDontCare : target.value(slot.name);
  }
  if (std::all_of(d.goal.constraints.begin(), d.goal.constraints.end(),
                  [](const auto& kv) { return kv.second == kDontCare; })) {
    const auto& slot = rng_.pick(ontology_.informable).name;
    d.goal.constraints[slot] = target.value(slot);
  }
  Strings requests;
  const double r = rng_.uniform();
  Strings pool = {"address", "phone", "postcode"};
  rng_.shuffle(pool);
  const std::size_t n_req = r < 0.15 ? 0 : (r < 0.65 ? 1 : 2);
  requests.assign(pool.begin(), pool.begin() + static_cast<long>(n_req));
  for (const auto& slot : ontology_.informable) {
    if (d.goal.constraints[slot.name] == kDontCare && rng_.bernoulli(0.3)) {
      requests.push_back(slot.name);
    }
  }
  d.goal.requests = requests;

  // Optionally start from a constraint value with no matching venue.
  std::map<std::string, std::string> stated = d.goal.constraints;
  std::string bad_slot;
  if (rng_.bernoulli(options_.unsatisfiable_prob)) {
    Strings candidates;
    for (const auto& [slot, value] : d.goal.constraints) {
      if (value != kDontCare) candidates.push_back(slot);
    }
    const std::string slot = rng_.pick(candidates);
    Strings values = ontology_.values(slot);
    rng_.shuffle(values);
    for (const auto& v : values) {
      if (v == d.goal.constraints[slot]) continue;
      auto cons = d.goal.as_constraints();
      cons[slot] = v;
      if (database_.count(cons) == 0) {
        stated[slot] = v;
        bad_slot = slot;
        break;
      }
    }
  }

  Strings order;
  for (const auto& slot : ontology_.informable) order.push_back(slot.name);
  rng_.shuffle(order);
  const double k_draw = rng_.uniform();
  const std::size_t first_k = k_draw < 0.3 ? 1 : (k_draw < 0.65 ? 2 : 3);

  const Entity* pointer = nullptr;
  Strings pending_requests = requests;
  Act last_act = Act::kAsk;
  std::string asked_slot;
  bool finished = false;

  for (int turn_no = 0; !finished && turn_no < 12; ++turn_no) {
    Turn turn;
    Strings requested_now;
    bool said_bye = false;

    // ---- user
    if (turn_no == 0) {
      std::map<std::string, std::string> vals;
      Strings dontcares;
      for (std::size_t i = 0; i < first_k; ++i) {
        const auto& slot = order[i];
        if (stated[slot] == kDontCare) {
          dontcares.push_back(slot);
        } else {
          vals[slot] = stated[slot];
        }
        mentioned_[slot] = stated[slot];
      }
      Strings parts;
      if (rng_.bernoulli(0.4)) parts.push_back(rng_.pick(kOpeners));
      if (rng_.bernoulli(0.5)) parts.push_back(rng_.pick(kContext));
      parts.push_back(replace_all(rng_.pick(kInformWrappers), "{np}", noun_phrase(vals, true)));
      for (const auto& slot : dontcares) {
        parts.push_back(rng_.pick(Strings{"and", ","}));
        parts.push_back(dontcare_clause(slot));
      }
      user_turn(turn, join(parts));
    } else if (last_act == Act::kNoMatch) {
      stated[bad_slot] = d.goal.constraints[bad_slot];
      mentioned_[bad_slot] = stated[bad_slot];
      user_turn(turn, replace_all(rng_.pick(kChangeWrappers), "{f}",
                                  slot_fragment(bad_slot, stated[bad_slot])));
    } else if (last_act == Act::kAsk) {
      Strings answers = {asked_slot};
      for (const auto& slot : order) {
        if (!mentioned_.count(slot) && slot != asked_slot && rng_.bernoulli(0.3)) {
          answers.push_back(slot);
          break;
        }
      }
      Strings clauses;
      for (const auto& slot : answers) {
        mentioned_[slot] = stated[slot];
        if (stated[slot] == kDontCare) {
          clauses.push_back(dontcare_clause(slot));
        } else {
          clauses.push_back(replace_all(rng_.pick(kAnswerWrappers), "{f}",
                                        slot_fragment(slot, stated[slot])));
        }
      }
      std::string text = clauses[0];
      for (std::size_t i = 1; i < clauses.size(); ++i) text += " and " + clauses[i];
      user_turn(turn, text);
    } else if (!pending_requests.empty()) {
      const std::size_t n = pending_requests.size() >= 2 && rng_.bernoulli(0.3) ? 2 : 1;
      requested_now.assign(pending_requests.begin(), pending_requests.begin() + static_cast<long>(n));
      pending_requests.erase(pending_requests.begin(), pending_requests.begin() + static_cast<long>(n));
      std::string list;
      for (std::size_t i = 0; i < requested_now.size(); ++i) {
        if (i) list += " and ";
        list += "the " + user_phrase(requested_now[i]);
      }
      user_turn(turn, join({rng_.pick(kAcks),
                            replace_all(rng_.pick(kRequestWrappers), "{R}", list)}));
    } else {
      if (!rng_.bernoulli(options_.goodbye_prob)) break;
      said_bye = true;
      user_turn(turn, rng_.pick(kUserBye));
    }

    // ---- labels and database state
    for (const auto& slot : ontology_.informable) {
      auto it = mentioned_.find(slot.name);
      turn.labels.informable[slot.name] = it == mentioned_.end() ? kNotMentioned : it->second;
    }
    for (const auto& slot : ontology_.requestable) {
      turn.labels.requestable[slot] =
          std::find(requested_now.begin(), requested_now.end(), slot) != requested_now.end();
    }
    const auto matches = database_.matches(turn.labels.as_constraints());
    turn.db_match = static_cast<int>(matches.size());

    // ---- system
    std::string sys;
    std::string missing;
    for (const auto& slot : ontology_.informable) {
      if (!mentioned_.count(slot.name)) {
        missing = slot.name;
        break;
      }
    }
    if (!requested_now.empty()) {
      last_act = Act::kAnswer;
      Strings clauses;
      for (std::size_t i = 0; i < requested_now.size(); ++i) {
        clauses.push_back(rng_.pick(i == 0 ? kSysAnswerFirst.at(requested_now[i])
                                           : kSysAnswerNext.at(requested_now[i])));
      }
      std::string body = clauses[0];
      for (std::size_t i = 1; i < clauses.size(); ++i) body += " and " + clauses[i];
      sys = join({rng_.pick(kSysAnswerPrefix), body, "."});
      if (rng_.bernoulli(0.3)) sys += " is there anything else i can help with ?";
    } else if (said_bye) {
      last_act = Act::kBye;
      sys = rng_.pick(kSysBye);
      finished = true;
    } else if (matches.empty()) {
      last_act = Act::kNoMatch;
      sys = replace_all(rng_.pick(kSysNoMatch), "{np}", noun_phrase(sys_values(), false));
      if (rng_.bernoulli(0.5)) sys += " would you like to try something else ?";
    } else if (!missing.empty() && matches.size() > 1) {
      last_act = Act::kAsk;
      asked_slot = missing;
      Strings parts = {rng_.pick(kSysAskPrefix)};
      const auto vals = sys_values();
      if (!vals.empty() && rng_.bernoulli(0.3)) {
        std::string np = noun_phrase(vals, false);
        parts.push_back("i have several options for " + np + " .");
      }
      parts.push_back(rng_.pick(kSysAsk.at(missing)));
      sys = join(parts);
    } else {
      last_act = Act::kOffer;
      const bool keep = pointer != nullptr &&
                        std::find(matches.begin(), matches.end(), pointer) != matches.end();
      if (!keep) pointer = matches[rng_.below(matches.size())];
      sys = replace_all(rng_.pick(kSysOffer), "{np}", noun_phrase(sys_values(), true));
      if (rng_.bernoulli(0.4)) sys += " " + rng_.pick(kSysOfferCloser);
    }
    turn.sys = split_ws(sys);
    turn.sys.push_back(kEosToken);
    d.turns.push_back(std::move(turn));
  }
  return d;
}

}  // namespace

std::vector<Dialogue> generate_corpus(const Ontology& ontology, const Database& database,
                                      std::size_t n_dialogues, Rng& rng,
                                      const GeneratorOptions& options) {
  if (n_dialogues < 1) throw ConfigError("need at least one dialogue");
  ontology.validate();
  database.validate(ontology);
  const Lexicon lexicon(ontology, database);
  DialogueBuilder builder(ontology, database, lexicon, rng, options);
  std::vector<Dialogue> out;
  out.reserve(n_dialogues);
  for (std::size_t i = 0; i < n_dialogues; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "d%04zu", i);
    out.push_back(builder.build(id));
  }
  return out;
}

CorpusSplit split_corpus(std::vector<Dialogue> dialogues, Rng& rng) {
  if (dialogues.size() < 5) {
    throw ConfigError("need at least 5 dialogues to split 3:1:1, got " +
                      std::to_string(dialogues.size()));
  }
  rng.shuffle(dialogues);
  const auto n = static_cast<double>(dialogues.size());
  const auto n_valid = static_cast<std::size_t>(std::llround(n / 5.0));
  const auto n_test = n_valid;
  const std::size_t n_train = dialogues.size() - n_valid - n_test;
  CorpusSplit split;
  auto it = std::make_move_iterator(dialogues.begin());
  split.train.assign(it, it + static_cast<long>(n_train));
  split.valid.assign(it + static_cast<long>(n_train),
                     it + static_cast<long>(n_train + n_valid));
  split.test.assign(it + static_cast<long>(n_train + n_valid),
                    std::make_move_iterator(dialogues.end()));
  return split;
}

}  // namespace snapdial
