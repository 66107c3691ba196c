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

#include <string>
#include <vector>

#include "snapdial/corpus/dialogue.hpp"
#include "snapdial/json_io.hpp"

namespace snapdial {

inline constexpr const char* kOfferedIndicator = "offered";

// Ordered snapshot indicators: "offered" followed by delexicalised tokens.
// The i-th indicator is read from component i of the conditioning vector.
struct IndicatorSpec {
  std::vector<std::string> ids;

  std::size_t size() const { return ids.size(); }
  Json to_json() const { return ids; }
  static IndicatorSpec from_json(const Json& json);

  friend bool operator==(const IndicatorSpec&, const IndicatorSpec&) = default;
};

// offered, [v.name], then the [v.*] token of every requestable slot.
IndicatorSpec default_indicator_spec(const Ontology& ontology);

// Targets for one turn: one row of length d per generation step.
using TurnTargets = std::vector<std::vector<double>>;

// Per turn, per step of sys (which includes the final </s>):
//  - offered: 1 from the first turn whose response contains [v.name] on,
//    0 before it;
//  - token indicators with attention: 1 at step j iff the token occurs in
//    sys[j:]; without attention: 1 at every step iff it occurs in sys.
std::vector<TurnTargets> label_snapshots(const Dialogue& dialogue, const IndicatorSpec& spec,
                                         bool attention);

// Mean over the d indicators of BCE(target, (a + 1) / 2), summed over steps.
// Throws AlignmentError when trace and targets disagree in length.
double snapshot_loss(const std::vector<std::vector<double>>& activations,
                     const TurnTargets& targets);
// Gradient of snapshot_loss with respect to each activation.
std::vector<std::vector<double>> snapshot_loss_grad(
    const std::vector<std::vector<double>>& activations, const TurnTargets& targets);

}  // namespace snapdial
