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

#include <cmath>

namespace snapdial::testing {

struct BleuCase {
  const char* candidate;
  const char* reference;
  int max_n;
  double expected;
};

// Worked by hand: p1 clipped, p_n (n >= 2) as (m + 1) / (t + 1), BP exp(1 - r / c).
inline const BleuCase kBleuCases[] = {
    {"a b c d", "a b c d", 4, 1.0},
    {"a b", "a b", 4, 1.0},
    {"a", "b", 4, 0.0},
    {"a b c", "a b d", 4, std::pow(2.0 / 9.0, 0.25)},
    {"a a a a", "a b", 4, std::pow(1.0 / 96.0, 0.25)},
    {"a b", "a b c d", 4, std::exp(-1.0)},
    {"a b </s>", "a b c d </s>", 4, std::exp(-1.0)},
    {"", "a b", 4, 0.0},
    {"</s>", "a b </s>", 4, 0.0},
    {"the cat sat on the mat", "the cat is on the mat", 4, std::pow(1.0 / 18.0, 0.25)},
    {"a b c", "a b c d e f", 4, std::exp(-1.0)},
    {"x y z w", "a b c d", 4, 0.0},
    {"a b c", "a c", 1, 2.0 / 3.0},
    {"a b c", "a b c", 2, 1.0},
    {"a c b", "a b c", 2, std::sqrt(1.0 / 3.0)},
    {"a b a b", "a b a b a b", 4, std::exp(-0.5)},
    {"a b c d e", "a b c", 4, std::pow(3.0 / 50.0, 0.25)},
    {"b a", "a b", 4, std::pow(0.5, 0.25)},
    {"a a", "a a a", 4, std::exp(-0.5)},
    {"[v.name] is a nice place", "[v.name] is a nice place </s>", 4, 1.0},
    {"a b c d", "a b x d", 4, 0.5},
    {"a b c", "c b a", 1, 1.0},
};

}  // namespace snapdial::testing
