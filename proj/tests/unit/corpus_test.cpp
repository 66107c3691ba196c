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

#include <gtest/gtest.h>

#include <set>

#include "fixture.hpp"
#include "snapdial/corpus/delex.hpp"
#include "snapdial/error.hpp"

namespace snapdial {
namespace {

using testing::small_world;

TEST(Tokenize, SplitsPunctuationAndLowercases) {
  EXPECT_EQ(tokenize("Hello, World? ok."), (Tokens{"hello", ",", "world", "?", "ok", "."}));
  EXPECT_TRUE(tokenize("   ").empty());
}

TEST(Ontology, RestaurantDomainShape) {
  const Ontology o = make_restaurant_ontology();
  EXPECT_NO_THROW(o.validate());
  EXPECT_EQ(o.informable.size(), 3u);
  EXPECT_EQ(o.requestable.size(), 6u);
  EXPECT_EQ(o.tracker_slots().size(), 9u);
  EXPECT_EQ(o.tracker_slots()[0], "food");
  Ontology bad = o;
  bad.requestable.pop_back();
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Database, FixedTableWithUniqueNames) {
  const Ontology o = make_restaurant_ontology();
  const Database a = make_restaurant_database(o), b = make_restaurant_database(o);
  ASSERT_EQ(a.entities.size(), 99u);
  std::set<std::string> names;
  for (std::size_t i = 0; i < a.entities.size(); ++i) {
    names.insert(a.entities[i].name);
    EXPECT_EQ(a.entities[i].attributes, b.entities[i].attributes);
  }
  EXPECT_EQ(names.size(), 99u);
  EXPECT_EQ(a.count({}), 99u);
}

TEST(Lexicon, DelexicaliseThenLexicaliseRestoresValues) {
  const auto& w = small_world();
  const Entity& e = w.ws.database.entities[3];
  const Tokens sentence = tokenize(e.name + " serves " + e.value("food") + " food in the " +
                                   e.value("area") + " , phone " + e.value("phone"));
  const Tokens delex = w.lexicon->delexicalise(sentence);
  EXPECT_EQ(delex[0], "[v.name]");
  EXPECT_NE(std::find(delex.begin(), delex.end(), "[v.food]"), delex.end());
  EXPECT_NE(std::find(delex.begin(), delex.end(), "[v.phone]"), delex.end());
  EXPECT_EQ(lexicalise(delex, w.ws.corpus.ontology, &e), join_tokens(sentence));
}

TEST(Lexicon, MissingEntityRaisesWithTheToken) {
  const auto& w = small_world();
  try {
    lexicalise({"call", "[v.phone]"}, w.ws.corpus.ontology, nullptr);
    FAIL() << "expected LexicalisationError";
  } catch (const LexicalisationError& e) {
    EXPECT_EQ(e.token(), "[v.phone]");
  }
  std::string out;
  EXPECT_FALSE(lexicalise_marked({"call", "[v.phone]"}, w.ws.corpus.ontology, nullptr, {}, out));
  EXPECT_EQ(out, "call <<[v.phone]>>");
  EXPECT_EQ(lexicalise({"[v.food]", "[s.area]"}, w.ws.corpus.ontology, nullptr, {{"food", "thai"}}),
            "thai area");
}

TEST(Generator, DeterministicInSeed) {
  const Workspace a = make_workspace(30, 11), b = make_workspace(30, 11), c = make_workspace(30, 12);
  EXPECT_EQ(a.corpus.to_json(), b.corpus.to_json());
  EXPECT_NE(a.corpus.to_json(), c.corpus.to_json());
}

TEST(Generator, TurnsAreWellFormed) {
  const auto& w = small_world();
  const Ontology& o = w.ws.corpus.ontology;
  for (const auto& d : w.ws.corpus.dialogues) {
    ASSERT_FALSE(d.turns.empty());
    for (const auto& t : d.turns) {
      ASSERT_FALSE(t.sys.empty());
      EXPECT_EQ(t.sys.back(), kEosToken);
      EXPECT_FALSE(t.user_surface.empty());
      for (const auto& tok : t.sys) {
        if (tok.front() == '[') EXPECT_TRUE(valid_delex_token(tok, o)) << tok;
      }
      for (const auto& slot : o.informable) {
        for (const auto& value : slot.values) {
          EXPECT_EQ(std::find(t.sys.begin(), t.sys.end(), value), t.sys.end())
              << "literal value in system turn of " << d.id;
        }
      }
    }
  }
}

TEST(Split, ThreeOneOnePartition) {
  const auto& w = small_world();
  EXPECT_EQ(w.ws.split.train.size(), 60u);
  EXPECT_EQ(w.ws.split.valid.size(), 20u);
  EXPECT_EQ(w.ws.split.test.size(), 20u);
  std::set<std::string> ids;
  for (const auto* part : {&w.ws.split.train, &w.ws.split.valid, &w.ws.split.test}) {
    for (const auto& d : *part) ids.insert(d.id);
  }
  EXPECT_EQ(ids.size(), 100u);
  Rng rng(1);
  EXPECT_THROW(split_corpus(std::vector<Dialogue>(4), rng), ConfigError);
}

TEST(Vocabulary, SpecialsFirstAndDelexTokensAlwaysPresent) {
  const auto& w = small_world();
  const Vocabulary& v = w.ws.vocab;
  EXPECT_EQ(v.token(Vocabulary::kPad), kPadToken);
  EXPECT_EQ(v.token(Vocabulary::kBos), kBosToken);
  EXPECT_EQ(v.token(Vocabulary::kEos), kEosToken);
  for (const auto& s : special_tokens(w.ws.corpus.ontology)) EXPECT_TRUE(v.contains(s)) << s;
  EXPECT_EQ(v.id("never-seen-word"), Vocabulary::kUnk);
  EXPECT_EQ(v.decode(v.encode({"[v.name]", kEosToken})), (Tokens{"[v.name]", kEosToken}));
  EXPECT_THROW(build_vocab({}, w.ws.corpus.ontology), ConfigError);
}

TEST(Workspace, SaveLoadRoundTrip) {
  const auto dir = testing::temp_dir("workspace");
  const auto& w = small_world();
  save_workspace(w.ws, CorpusPaths{dir});
  const Workspace back = load_workspace(CorpusPaths{dir});
  EXPECT_EQ(back.corpus.to_json(), w.ws.corpus.to_json());
  EXPECT_EQ(back.vocab.hash(), w.ws.vocab.hash());
  EXPECT_EQ(back.split.test.size(), w.ws.split.test.size());
  EXPECT_EQ(back.split.test[0].id, w.ws.split.test[0].id);
  EXPECT_THROW(load_workspace(CorpusPaths{dir / "missing"}), ConfigError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace snapdial
