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

#include <cstddef>
#include <vector>

#include "snapdial/corpus/dialogue.hpp"
#include "snapdial/numerics/rng.hpp"

namespace snapdial {

struct GeneratorOptions {
  double dontcare_prob = 0.2;      // per informable goal slot
  double unsatisfiable_prob = 0.15;  // start with a constraint that has no match
  double goodbye_prob = 0.9;       // otherwise the dialogue ends unfinished
};

// Template-based Wizard-of-Oz style dialogues over the restaurant domain.
// The simulated user states constraints over one to three turns, the wizard
// asks for missing slots, reports "no match", offers a venue and answers
// requests. User turns carry both surface and delexicalised tokens; system
// turns are generated directly in skeletal form. Deterministic in `rng`.
std::vector<Dialogue> generate_corpus(const Ontology& ontology,
                                      const Database& database,
                                      std::size_t n_dialogues, Rng& rng,
                                      const GeneratorOptions& options = {});

struct CorpusSplit {
  std::vector<Dialogue> train;
  std::vector<Dialogue> valid;
  std::vector<Dialogue> test;
};

// Dialogue-level 3:1:1 partition after a seeded shuffle. Needs at least five
// dialogues.
CorpusSplit split_corpus(std::vector<Dialogue> dialogues, Rng& rng);

}  // namespace snapdial
