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

namespace snapdial::kernels {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv(const double* w, std::size_t rows, std::size_t cols, const double* x,
          double* y);
void gemv_t(const double* w, std::size_t rows, std::size_t cols,
            const double* y_grad, double* x_grad);
void ger(double* w, std::size_t rows, std::size_t cols, const double* u,
         const double* v);
double sumsq(const double* x, std::size_t n);
}  // namespace scalar

#if defined(SNAPDIAL_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv(const double* w, std::size_t rows, std::size_t cols, const double* x,
          double* y);
void gemv_t(const double* w, std::size_t rows, std::size_t cols,
            const double* y_grad, double* x_grad);
void ger(double* w, std::size_t rows, std::size_t cols, const double* u,
         const double* v);
double sumsq(const double* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace snapdial::kernels
