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
#include <span>

#include "snapdial/numerics/tensor.hpp"

namespace snapdial {

// Pred values are clamped to [eps, 1 - eps] before taking logs.
inline constexpr double kCrossEntropyClamp = 1e-10;

// ---------------------------------------------------------------------------
// Scalar activations. Outputs are kept strictly inside the open ranges even
// where the exact value rounds to the boundary in double precision.

inline constexpr double kOneBelow = 1.0 - 0x1.0p-53;
inline constexpr double kTinyPositive = 0x1.0p-1022;

inline double sigmoid(double x) {
  double y;
  if (x >= 0.0) {
    y = 1.0 / (1.0 + std::exp(-x));
  } else {
    const double e = std::exp(x);
    y = e / (1.0 + e);
  }
  if (y >= 1.0) return kOneBelow;
  if (y <= 0.0) return kTinyPositive;
  return y;
}

inline double tanh_clamped(double x) {
  const double y = std::tanh(x);
  if (y >= 1.0) return kOneBelow;
  if (y <= -1.0) return -kOneBelow;
  return y;
}

// ---------------------------------------------------------------------------
// In-place span helpers used by the model code.

void sigmoid_inplace(std::span<double> x);
void tanh_inplace(std::span<double> x);
// Numerically stable softmax (max subtraction). Throws on empty input.
void softmax_inplace(std::span<double> x);
// Returns log-sum-exp of x, max-shifted.
double log_sum_exp(std::span<const double> x);

// ---------------------------------------------------------------------------
// Tensor-level operations. Every forward has a matching backward that
// accumulates into the provided gradient tensors.

// y = W x (+ b). W is [m x n], x is [n], b is [m] or null.
Tensor affine(const Tensor& w, const Tensor& x, const Tensor* b = nullptr);
void affine_backward(const Tensor& w, const Tensor& x, const Tensor& dy,
                     Tensor& dw, Tensor& dx, Tensor* db = nullptr);

Tensor sigmoid(const Tensor& x);
Tensor tanh(const Tensor& x);
// Gradients expressed through the forward outputs: y(1-y) and 1-y^2.
Tensor sigmoid_backward(const Tensor& y, const Tensor& dy);
Tensor tanh_backward(const Tensor& y, const Tensor& dy);

Tensor softmax(const Tensor& x);
Tensor softmax_backward(const Tensor& y, const Tensor& dy);

// Categorical form: -sum target * log(clamp(pred)).
double cross_entropy(const Tensor& target, const Tensor& pred,
                     double clamp_eps = kCrossEntropyClamp);
Tensor cross_entropy_grad(const Tensor& target, const Tensor& pred,
                          double clamp_eps = kCrossEntropyClamp);

// Binary form: -sum [t log(clamp(p)) + (1 - t) log(clamp(1 - p))].
double binary_cross_entropy(const Tensor& target, const Tensor& pred,
                            double clamp_eps = kCrossEntropyClamp);
Tensor binary_cross_entropy_grad(const Tensor& target, const Tensor& pred,
                                 double clamp_eps = kCrossEntropyClamp);

// Element forms shared with the snapshot loss.
double binary_cross_entropy(double target, double pred, double clamp_eps);
double binary_cross_entropy_grad(double target, double pred, double clamp_eps);

}  // namespace snapdial
