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

#include "snapdial/numerics/kernels.hpp"
#include "snapdial/numerics/tensor.hpp"

// Thin helpers over the kernels for the model code. Column offsets let a
// matrix act on one block of a concatenated input.
namespace snapdial::vec {

// y += W[:, col0:col0+len] x
inline void gemv_block(const Tensor& w, std::size_t col0, std::size_t len, const double* x,
                       double* y) {
  const std::size_t rows = w.rows();
  const std::size_t cols = w.cols();
  if (col0 == 0 && len == cols) {
    kernels::gemv(w.data().data(), rows, cols, x, y);
    return;
  }
  const double* base = w.data().data();
  for (std::size_t r = 0; r < rows; ++r) {
    y[r] += kernels::dot(base + r * cols + col0, x, len);
  }
}

inline void gemv(const Tensor& w, const double* x, double* y) {
  kernels::gemv(w.data().data(), w.rows(), w.cols(), x, y);
}

// dx += W^T dy
inline void gemv_t(const Tensor& w, const double* dy, double* dx) {
  kernels::gemv_t(w.data().data(), w.rows(), w.cols(), dy, dx);
}

// dW += dy x^T
inline void ger(Tensor& dw, const double* dy, const double* x) {
  kernels::ger(dw.data().data(), dw.rows(), dw.cols(), dy, x);
}

inline void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
  kernels::axpy(a, x.data(), y.data(), x.size());
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return kernels::dot(a.data(), b.data(), a.size());
}

}  // namespace snapdial::vec
