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

#include <span>

#include "snapdial/numerics/tensor.hpp"

namespace snapdial {

enum class ClipMode {
  kGlobalNorm,  // rescale all gradients so their joint L2 norm <= clip
  kElement,     // clamp every gradient entry to [-clip, clip]
  kNone,
};

struct SgdOptions {
  double learning_rate = 0.05;
  double l2 = 1e-5;
  double clip = 1.0;
  ClipMode clip_mode = ClipMode::kGlobalNorm;
};

// Joint L2 norm of all gradients.
double global_grad_norm(std::span<Parameter* const> params);

// Clips the accumulated gradients, applies
//   value <- value - lr * (grad + l2 * value)
// and zeroes the gradients. Throws TrainingError naming the first parameter
// whose gradient holds a non-finite value; values are untouched in that case.
// Returns the pre-clip gradient norm.
double clip_and_step(std::span<Parameter* const> params,
                     const SgdOptions& options);

}  // namespace snapdial
