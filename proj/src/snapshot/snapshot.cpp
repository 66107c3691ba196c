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

#include "snapdial/snapshot/snapshot.hpp"

#include <algorithm>

#include "snapdial/error.hpp"
#include "snapdial/numerics/ops.hpp"

namespace snapdial {

IndicatorSpec IndicatorSpec::from_json(const Json& json) {
  try {
    return IndicatorSpec{json.get<std::vector<std::string>>()};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad indicator spec: ") + e.what());
  }
}

IndicatorSpec default_indicator_spec(const Ontology& ontology) {
  IndicatorSpec spec;
  spec.ids.push_back(kOfferedIndicator);
  spec.ids.push_back("[v.name]");
  for (const auto& slot : ontology.requestable) spec.ids.push_back("[v." + slot + "]");
  return spec;
}

std::vector<TurnTargets> label_snapshots(const Dialogue& dialogue, const IndicatorSpec& spec,
                                         bool attention) {
  std::vector<TurnTargets> out;
  bool offered = false;
  for (const auto& turn : dialogue.turns) {
    const Tokens& sys = turn.sys;
    offered = offered || std::find(sys.begin(), sys.end(), "[v.name]") != sys.end();
    // last position of each indicator token in the response
    std::vector<long> last(spec.size(), -1);
    for (std::size_t k = 0; k < spec.size(); ++k) {
      for (std::size_t j = 0; j < sys.size(); ++j) {
        if (sys[j] == spec.ids[k]) last[k] = static_cast<long>(j);
      }
    }
    TurnTargets rows(sys.size(), std::vector<double>(spec.size(), 0.0));
    for (std::size_t j = 0; j < sys.size(); ++j) {
      for (std::size_t k = 0; k < spec.size(); ++k) {
        if (spec.ids[k] == kOfferedIndicator) {
          rows[j][k] = offered ? 1.0 : 0.0;
        } else if (attention) {
          rows[j][k] = static_cast<long>(j) <= last[k] ? 1.0 : 0.0;
        } else {
          rows[j][k] = last[k] >= 0 ? 1.0 : 0.0;
        }
      }
    }
    out.push_back(std::move(rows));
  }
  return out;
}

namespace {

void check_aligned(const std::vector<std::vector<double>>& activations,
                   const TurnTargets& targets) {
  if (activations.size() != targets.size()) {
    throw AlignmentError("snapshot trace has " + std::to_string(activations.size()) +
                         " steps, targets have " + std::to_string(targets.size()));
  }
  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (activations[j].size() != targets[j].size()) {
      throw AlignmentError("snapshot step " + std::to_string(j) + " has " +
                           std::to_string(activations[j].size()) + " activations for " +
                           std::to_string(targets[j].size()) + " targets");
    }
  }
}

}  // namespace

double snapshot_loss(const std::vector<std::vector<double>>& activations,
                     const TurnTargets& targets) {
  check_aligned(activations, targets);
  double total = 0.0;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const std::size_t d = targets[j].size();
    if (d == 0) continue;
    double step = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      step += binary_cross_entropy(targets[j][k], 0.5 * (activations[j][k] + 1.0),
                                   kCrossEntropyClamp);
    }
    total += step / static_cast<double>(d);
  }
  return total;
}

std::vector<std::vector<double>> snapshot_loss_grad(
    const std::vector<std::vector<double>>& activations, const TurnTargets& targets) {
  check_aligned(activations, targets);
  std::vector<std::vector<double>> out(targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const std::size_t d = targets[j].size();
    out[j].resize(d);
    for (std::size_t k = 0; k < d; ++k) {
      out[j][k] = 0.5 / static_cast<double>(d) *
                  binary_cross_entropy_grad(targets[j][k], 0.5 * (activations[j][k] + 1.0),
                                            kCrossEntropyClamp);
    }
  }
  return out;
}

}  // namespace snapdial
