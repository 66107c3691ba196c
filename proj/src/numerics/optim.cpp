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

#include "snapdial/numerics/optim.hpp"

#include <algorithm>
#include <cmath>

#include "snapdial/error.hpp"
#include "snapdial/numerics/kernels.hpp"

namespace snapdial {

double global_grad_norm(std::span<Parameter* const> params) {
  double total = 0.0;
  for (const Parameter* p : params) {
    total += kernels::sumsq(p->grad.data().data(), p->grad.size());
  }
  return std::sqrt(total);
}

double clip_and_step(std::span<Parameter* const> params,
                     const SgdOptions& options) {
  for (const Parameter* p : params) {
    if (!p->grad.all_finite()) {
      throw TrainingError("non-finite gradient in parameter '" + p->name + "'");
    }
  }
  const double norm = global_grad_norm(params);
  double scale = 1.0;
  if (options.clip_mode == ClipMode::kGlobalNorm && norm > options.clip) {
    scale = options.clip / norm;
  }
  const double lr = options.learning_rate;
  const double decay = 1.0 - lr * options.l2;
  for (Parameter* p : params) {
    auto value = p->value.data();
    auto grad = p->grad.data();
    for (std::size_t i = 0; i < value.size(); ++i) {
      double g = grad[i] * scale;
      if (options.clip_mode == ClipMode::kElement) {
        g = std::clamp(g, -options.clip, options.clip);
      }
      value[i] = value[i] * decay - lr * g;
      grad[i] = 0.0;
    }
  }
  return norm;
}

}  // namespace snapdial
