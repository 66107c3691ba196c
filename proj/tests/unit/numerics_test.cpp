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

#include <gtest/gtest.h>

#include <cmath>

#include "snapdial/error.hpp"
#include "snapdial/numerics/gradcheck.hpp"
#include "snapdial/numerics/kernels.hpp"
#include "snapdial/numerics/ops.hpp"
#include "snapdial/numerics/optim.hpp"
#include "snapdial/numerics/rng.hpp"

namespace snapdial {
namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  rng.fill_uniform(v, -1.0, 1.0);
  return v;
}

class KernelsTest : public ::testing::TestWithParam<std::size_t> {};

TEST_P(KernelsTest, Avx2MatchesScalar) {
  const auto* avx = kernels::avx2_table();
  if (avx == nullptr || !kernels::cpu_has_avx2()) GTEST_SKIP() << "no AVX2";
  const auto& sc = kernels::scalar_table();
  const std::size_t n = GetParam();
  Rng rng(n + 1);
  const auto a = random_vec(rng, n), b = random_vec(rng, n);
  EXPECT_NEAR(sc.dot(a.data(), b.data(), n), avx->dot(a.data(), b.data(), n), 1e-12);
  EXPECT_NEAR(sc.sumsq(a.data(), n), avx->sumsq(a.data(), n), 1e-12);

  auto y1 = b, y2 = b;
  sc.axpy(0.7, a.data(), y1.data(), n);
  avx->axpy(0.7, a.data(), y2.data(), n);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-14);

  const std::size_t rows = 7;
  const auto w = random_vec(rng, rows * n);
  std::vector<double> out1(rows, 0.5), out2(rows, 0.5);
  sc.gemv(w.data(), rows, n, a.data(), out1.data());
  avx->gemv(w.data(), rows, n, a.data(), out2.data());
  for (std::size_t r = 0; r < rows; ++r) EXPECT_NEAR(out1[r], out2[r], 1e-12);

  const auto dy = random_vec(rng, rows);
  std::vector<double> dx1(n, 0.1), dx2(n, 0.1);
  sc.gemv_t(w.data(), rows, n, dy.data(), dx1.data());
  avx->gemv_t(w.data(), rows, n, dy.data(), dx2.data());
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(dx1[i], dx2[i], 1e-12);

  auto g1 = w, g2 = w;
  sc.ger(g1.data(), rows, n, dy.data(), a.data());
  avx->ger(g2.data(), rows, n, dy.data(), a.data());
  for (std::size_t i = 0; i < g1.size(); ++i) EXPECT_NEAR(g1[i], g2[i], 1e-14);
}

INSTANTIATE_TEST_SUITE_P(Lengths, KernelsTest, ::testing::Values(1, 3, 4, 5, 8, 17, 50, 150));

TEST(Kernels, ScalarGemvMatchesLoops) {
  const auto& sc = kernels::scalar_table();
  const std::vector<double> w{1, 2, 3, 4, 5, 6};
  const std::vector<double> x{1, -1, 2};
  std::vector<double> y{0, 1};
  sc.gemv(w.data(), 2, 3, x.data(), y.data());
  EXPECT_DOUBLE_EQ(y[0], 1 - 2 + 6);
  EXPECT_DOUBLE_EQ(y[1], 1 + 4 - 5 + 12);
}

TEST(Kernels, SelectRejectsUnknownName) {
  const std::string before = kernels::active().name;
  EXPECT_FALSE(kernels::select("gpu"));
  EXPECT_EQ(before, kernels::active().name);
  EXPECT_TRUE(kernels::select("scalar"));
  EXPECT_STREQ(kernels::active().name, "scalar");
  kernels::select(before);
}

TEST(Ops, ActivationsStayInsideOpenRanges) {
  for (double x : {-1e6, -800.0, -40.0, 0.0, 40.0, 800.0, 1e6}) {
    const double s = sigmoid(x);
    EXPECT_GT(s, 0.0);
    EXPECT_LT(s, 1.0);
    const double t = tanh_clamped(x);
    EXPECT_GT(t, -1.0);
    EXPECT_LT(t, 1.0);
  }
  EXPECT_EQ(sigmoid(0.0), 0.5);
}

TEST(Ops, SoftmaxIsShiftInvariantAndNormalised) {
  std::vector<double> a{1000.0, 1001.0, 999.0}, b{0.0, 1.0, -1.0};
  softmax_inplace(a);
  softmax_inplace(b);
  double sum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(a[i], b[i], 1e-15);
    sum += a[i];
  }
  EXPECT_NEAR(sum, 1.0, 1e-15);
  std::vector<double> empty;
  EXPECT_THROW(softmax_inplace(empty), DimensionError);
}

TEST(Ops, CrossEntropyClampsZeroProbability) {
  const Tensor target = Tensor::vector({0.0, 1.0});
  const Tensor pred = Tensor::vector({1.0, 0.0});
  EXPECT_NEAR(cross_entropy(target, pred), -std::log(kCrossEntropyClamp), 1e-9);
  EXPECT_NEAR(binary_cross_entropy(1.0, 0.0, kCrossEntropyClamp), -std::log(kCrossEntropyClamp),
              1e-9);
}

TEST(Ops, AffineBackwardMatchesGradCheck) {
  Rng rng(3);
  Parameter w("w", Shape{3, 4});
  Parameter b("b", Shape{3});
  rng.fill_uniform(w.value.data(), -1, 1);
  rng.fill_uniform(b.value.data(), -1, 1);
  Tensor x(Shape{4});
  rng.fill_uniform(x.data(), -1, 1);
  auto loss = [&](bool acc) {
    const Tensor y = tanh(affine(w.value, x, &b.value));
    double l = 0.0;
    Tensor dy(Shape{3});
    for (std::size_t i = 0; i < 3; ++i) {
      l += 0.5 * y[i] * y[i];
      dy[i] = y[i];
    }
    if (acc) {
      Tensor dx(Shape{4});
      affine_backward(w.value, x, tanh_backward(y, dy), w.grad, dx, &b.grad);
    }
    return l;
  };
  Parameter* ps[] = {&w, &b};
  EXPECT_LT(grad_check(loss, ps, 1e-5).max_rel_error, 1e-7);
}

TEST(Optim, GlobalNormClipRescalesJointly) {
  Parameter a("a", Tensor::vector({0.0, 0.0}));
  Parameter b("b", Tensor::vector({0.0}));
  a.grad = Tensor::vector({3.0, 0.0});
  b.grad = Tensor::vector({4.0});
  SgdOptions opt;
  opt.learning_rate = 1.0;
  opt.l2 = 0.0;
  opt.clip = 1.0;
  Parameter* ps[] = {&a, &b};
  EXPECT_DOUBLE_EQ(clip_and_step(ps, opt), 5.0);
  EXPECT_NEAR(a.value[0], -0.6, 1e-15);
  EXPECT_NEAR(b.value[0], -0.8, 1e-15);
  EXPECT_EQ(a.grad[0], 0.0);
}

TEST(Optim, ElementClipAndWeightDecay) {
  Parameter a("a", Tensor::vector({1.0, 1.0}));
  a.grad = Tensor::vector({5.0, -0.5});
  SgdOptions opt;
  opt.learning_rate = 0.1;
  opt.l2 = 0.5;
  opt.clip = 1.0;
  opt.clip_mode = ClipMode::kElement;
  Parameter* ps[] = {&a};
  clip_and_step(ps, opt);
  EXPECT_NEAR(a.value[0], 1.0 * (1 - 0.05) - 0.1 * 1.0, 1e-15);
  EXPECT_NEAR(a.value[1], 1.0 * (1 - 0.05) + 0.1 * 0.5, 1e-15);
}

TEST(Optim, NonFiniteGradientLeavesValuesUntouched) {
  Parameter a("a", Tensor::vector({1.0}));
  a.grad = Tensor::vector({std::nan("")});
  Parameter* ps[] = {&a};
  EXPECT_THROW(clip_and_step(ps, SgdOptions{}), TrainingError);
  EXPECT_EQ(a.value[0], 1.0);
}

TEST(Rng, StreamIsFixedBySeed) {
  Rng a(42), b(42), c(43);
  int differ = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differ += x != c.next_u64();
  }
  EXPECT_GT(differ, 90);
  Rng d(5);
  for (int i = 0; i < 1000; ++i) {
    const auto k = d.below(7);
    EXPECT_LT(k, 7u);
    const double u = d.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_NE(mix_seed(1, 2), mix_seed(2, 1));
}

TEST(GradCheck, DetectsAWrongGradient) {
  Parameter p("p", Tensor::vector({0.3, -0.2}));
  auto loss = [&](bool acc) {
    const double l = p.value[0] * p.value[0] + 3 * p.value[1];
    if (acc) {
      p.grad[0] += 2 * p.value[0];
      p.grad[1] += 2.0;  // wrong on purpose
    }
    return l;
  };
  Parameter* ps[] = {&p};
  const auto r = grad_check(loss, ps);
  EXPECT_GT(r.max_rel_error, 0.1);
  EXPECT_EQ(r.worst_index, 1u);
  EXPECT_EQ(p.value[0], 0.3);
}

}  // namespace
}  // namespace snapdial
