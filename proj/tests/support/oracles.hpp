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
#include <string>
#include <vector>

// Reference implementations written without the library's kernels or
// helpers; tests compare the library against these.
namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major, rows x cols

double sigmoid(double x);

// Plain LSTM step with gates from W (rows i, f, o over [m; w; h]) and the
// candidate from Wc over [w; h].
struct LstmOut {
  Vec h, c;
};
LstmOut lstm_step(const Mat& w, const Mat& wc, const Vec& m, const Vec& x, const Vec& h,
                  const Vec& c);

// Every token sequence of length 1..max_len over `vocab` ids that ends in
// `eos` and contains it nowhere else.
std::vector<std::vector<int>> finished_sequences(int vocab, int eos, std::size_t max_len);

// Per step j of `sys`: 1 iff `token` occurs at or after j (backward scan).
std::vector<double> suffix_labels(const std::vector<std::string>& sys, const std::string& token);

// |types(cand) with [..] that also occur in ref| / |types(cand) with [..]|,
// or -1 when the candidate has none. Linear scans only.
double slot_match(const std::vector<std::string>& cand, const std::vector<std::string>& ref);

struct Venue {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
};

struct PredTurn {
  std::vector<std::string> tokens;
  std::string entity;
};

// Success recount: constraints are (slot, value) pairs (dontcare omitted).
bool success(const std::vector<std::pair<std::string, std::string>>& constraints,
             const std::vector<std::string>& requests, const std::vector<PredTurn>& turns,
             const std::vector<Venue>& venues);

}  // namespace oracle
