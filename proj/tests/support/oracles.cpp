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

#include "oracles.hpp"

#include <cmath>

namespace oracle {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

namespace {

double row_dot(const Vec& row, const Vec& v, std::size_t offset) {
  double s = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) s += row[offset + k] * v[k];
  return s;
}

bool has(const std::vector<std::string>& xs, const std::string& x) {
  for (const auto& y : xs) {
    if (y == x) return true;
  }
  return false;
}

}  // namespace

LstmOut lstm_step(const Mat& w, const Mat& wc, const Vec& m, const Vec& x, const Vec& h,
                  const Vec& c) {
  const std::size_t n = h.size();
  LstmOut out{Vec(n), Vec(n)};
  for (std::size_t k = 0; k < n; ++k) {
    auto pre = [&](std::size_t row) {
      return row_dot(w[row], m, 0) + row_dot(w[row], x, m.size()) +
             row_dot(w[row], h, m.size() + x.size());
    };
    const double i = sigmoid(pre(k));
    const double f = sigmoid(pre(n + k));
    const double o = sigmoid(pre(2 * n + k));
    const double g = std::tanh(row_dot(wc[k], x, 0) + row_dot(wc[k], h, x.size()));
    out.c[k] = f * c[k] + i * g;
    out.h[k] = o * std::tanh(out.c[k]);
  }
  return out;
}

std::vector<std::vector<int>> finished_sequences(int vocab, int eos, std::size_t max_len) {
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> open{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : open) {
      for (int v = 0; v < vocab; ++v) {
        auto seq = prefix;
        seq.push_back(v);
        if (v == eos) {
          out.push_back(seq);
        } else {
          next.push_back(seq);
        }
      }
    }
    open = next;
  }
  return out;
}

std::vector<double> suffix_labels(const std::vector<std::string>& sys, const std::string& token) {
  std::vector<double> out(sys.size(), 0.0);
  bool seen = false;
  for (std::size_t j = sys.size(); j-- > 0;) {
    if (sys[j] == token) seen = true;
    out[j] = seen ? 1.0 : 0.0;
  }
  return out;
}

double slot_match(const std::vector<std::string>& cand, const std::vector<std::string>& ref) {
  std::vector<std::string> types;
  for (const auto& t : cand) {
    if (t.size() > 2 && t.front() == '[' && t.back() == ']' && !has(types, t)) types.push_back(t);
  }
  if (types.empty()) return -1.0;
  int hit = 0;
  for (const auto& t : types) hit += has(ref, t) ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(types.size());
}

bool success(const std::vector<std::pair<std::string, std::string>>& constraints,
             const std::vector<std::string>& requests, const std::vector<PredTurn>& turns,
             const std::vector<Venue>& venues) {
  for (std::size_t t = 0; t < turns.size(); ++t) {
    if (turns[t].entity.empty() || !has(turns[t].tokens, "[v.name]")) continue;
    const Venue* venue = nullptr;
    for (const auto& v : venues) {
      if (v.name == turns[t].entity) venue = &v;
    }
    if (venue == nullptr) continue;
    bool ok = true;
    for (const auto& [slot, value] : constraints) {
      bool match = false;
      for (const auto& [s, v] : venue->attributes) match = match || (s == slot && v == value);
      ok = ok && match;
    }
    if (!ok) continue;
    // earliest valid offer: every request must appear from here on
    for (const auto& r : requests) {
      bool found = false;
      for (std::size_t u = t; u < turns.size(); ++u) found = found || has(turns[u].tokens, "[v." + r + "]");
      if (!found) return false;
    }
    return true;
  }
  return false;
}

}  // namespace oracle
