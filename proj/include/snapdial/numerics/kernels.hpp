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
#include <string_view>

// Dense double-precision inner loops. Every kernel has a scalar reference
// implementation; an AVX2+FMA variant is compiled on x86-64 and selected at
// runtime when the CPU supports it. Matrices are row-major `rows x cols`.
//
// The active table can be forced with the environment variable
// SNAPDIAL_KERNELS=scalar|avx2 (read once, on first use) or with select().

namespace snapdial::kernels {

struct KernelTable {
  const char* name;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y += W x
  void (*gemv)(const double* w, std::size_t rows, std::size_t cols,
               const double* x, double* y);
  // x_grad += W^T y_grad
  void (*gemv_t)(const double* w, std::size_t rows, std::size_t cols,
                 const double* y_grad, double* x_grad);
  // W += u v^T
  void (*ger)(double* w, std::size_t rows, std::size_t cols, const double* u,
              const double* v);
  // sum_i x[i]^2
  double (*sumsq)(const double* x, std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_table();
bool cpu_has_avx2();

const KernelTable& active();
// Selects "scalar" or "avx2"; returns false (and keeps the current table)
// when the request cannot be honoured on this machine.
bool select(std::string_view name);

inline double dot(const double* a, const double* b, std::size_t n) {
  return active().dot(a, b, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  active().axpy(alpha, x, y, n);
}
inline void gemv(const double* w, std::size_t rows, std::size_t cols,
                 const double* x, double* y) {
  active().gemv(w, rows, cols, x, y);
}
inline void gemv_t(const double* w, std::size_t rows, std::size_t cols,
                   const double* y_grad, double* x_grad) {
  active().gemv_t(w, rows, cols, y_grad, x_grad);
}
inline void ger(double* w, std::size_t rows, std::size_t cols, const double* u,
                const double* v) {
  active().ger(w, rows, cols, u, v);
}
inline double sumsq(const double* x, std::size_t n) {
  return active().sumsq(x, n);
}

}  // namespace snapdial::kernels
