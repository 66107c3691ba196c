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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"
#include "snapdial/numerics/kernels.hpp"

namespace snapdial::kernels {

namespace {

const KernelTable kScalar{"scalar",        scalar::dot,  scalar::axpy,
                          scalar::gemv,    scalar::gemv_t, scalar::ger,
                          scalar::sumsq};

#if defined(SNAPDIAL_HAVE_AVX2)
const KernelTable kAvx2{"avx2",      avx2::dot,    avx2::axpy, avx2::gemv,
                        avx2::gemv_t, avx2::ger, avx2::sumsq};
#endif

const KernelTable* initial_table() {
  const char* env = std::getenv("SNAPDIAL_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") return &kScalar;
  if (cpu_has_avx2() && avx2_table() != nullptr) return avx2_table();
  return &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(SNAPDIAL_HAVE_AVX2)
  return &kAvx2;
#else
  return nullptr;
#endif
}

bool cpu_has_avx2() {
#if defined(SNAPDIAL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  if (name == "scalar") {
    current().store(&kScalar);
    return true;
  }
  if (name == "avx2" && cpu_has_avx2() && avx2_table() != nullptr) {
    current().store(avx2_table());
    return true;
  }
  return false;
}

}  // namespace snapdial::kernels
