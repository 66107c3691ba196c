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
#include <functional>
#include <span>
#include <string>

#include "snapdial/numerics/tensor.hpp"

namespace snapdial {

// Evaluates the loss at the current parameter values. When `accumulate` is
// true the function must also add analytic gradients into Parameter::grad.
using LossFunction = std::function<double(bool accumulate)>;

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_parameter;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  std::size_t coordinates_checked = 0;
};

// Compares analytic gradients with central differences
//   (f(theta + eps) - f(theta - eps)) / (2 eps)
// coordinate by coordinate. Relative error is |a - n| / max(|a|, |n|, floor).
// `max_per_parameter` > 0 limits the check to evenly strided coordinates of
// large tensors. Parameter values are restored and gradients zeroed on exit.
GradCheckResult grad_check(const LossFunction& loss,
                           std::span<Parameter* const> params,
                           double eps = 1e-5,
                           std::size_t max_per_parameter = 0,
                           double floor = 1e-8);

}  // namespace snapdial
