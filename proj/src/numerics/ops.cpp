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

#include "snapdial/numerics/ops.hpp"

#include <algorithm>
#include <limits>

#include "snapdial/error.hpp"
#include "snapdial/numerics/kernels.hpp"

namespace snapdial {

namespace {

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape " + shape_string(a.shape()) +
                         " vs " + shape_string(b.shape()));
  }
}

double clamp_prob(double p, double eps) {
  return std::clamp(p, eps, 1.0 - eps);
}

}  // namespace

void sigmoid_inplace(std::span<double> x) {
  for (double& v : x) v = sigmoid(v);
}

void tanh_inplace(std::span<double> x) {
  for (double& v : x) v = tanh_clamped(v);
}

void softmax_inplace(std::span<double> x) {
  if (x.empty()) throw DimensionError("softmax of empty vector");
  const double mx = *std::max_element(x.begin(), x.end());
  double sum = 0.0;
  for (double& v : x) {
    v = std::exp(v - mx);
    sum += v;
  }
  const double inv = 1.0 / sum;
  for (double& v : x) v *= inv;
}

double log_sum_exp(std::span<const double> x) {
  if (x.empty()) throw DimensionError("log-sum-exp of empty vector");
  const double mx = *std::max_element(x.begin(), x.end());
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - mx);
  return mx + std::log(sum);
}

Tensor affine(const Tensor& w, const Tensor& x, const Tensor* b) {
  if (w.rank() != 2 || x.rank() != 1 || w.cols() != x.size()) {
    throw DimensionError("affine: W " + shape_string(w.shape()) + " x " +
                         shape_string(x.shape()));
  }
  if (b != nullptr && (b->rank() != 1 || b->size() != w.rows())) {
    throw DimensionError("affine: bias " + shape_string(b->shape()) +
                         " for W " + shape_string(w.shape()));
  }
  require_finite(w.data(), "affine W");
  require_finite(x.data(), "affine x");
  Tensor y = b != nullptr ? *b : Tensor({w.rows()});
  kernels::gemv(w.data().data(), w.rows(), w.cols(), x.data().data(),
                y.data().data());
  return y;
}

void affine_backward(const Tensor& w, const Tensor& x, const Tensor& dy,
                     Tensor& dw, Tensor& dx, Tensor* db) {
  if (dy.size() != w.rows() || dw.shape() != w.shape() ||
      dx.size() != x.size() || x.size() != w.cols()) {
    throw DimensionError("affine_backward: shape mismatch");
  }
  kernels::ger(dw.data().data(), w.rows(), w.cols(), dy.data().data(),
               x.data().data());
  kernels::gemv_t(w.data().data(), w.rows(), w.cols(), dy.data().data(),
                  dx.data().data());
  if (db != nullptr) {
    if (db->size() != dy.size()) throw DimensionError("affine_backward: bias");
    for (std::size_t i = 0; i < dy.size(); ++i) (*db)[i] += dy[i];
  }
}

Tensor sigmoid(const Tensor& x) {
  Tensor y = x;
  sigmoid_inplace(y.data());
  return y;
}

Tensor tanh(const Tensor& x) {
  Tensor y = x;
  tanh_inplace(y.data());
  return y;
}

Tensor sigmoid_backward(const Tensor& y, const Tensor& dy) {
  require_same_shape(y, dy, "sigmoid_backward");
  Tensor dx(y.shape());
  for (std::size_t i = 0; i < y.size(); ++i) dx[i] = dy[i] * y[i] * (1.0 - y[i]);
  return dx;
}

Tensor tanh_backward(const Tensor& y, const Tensor& dy) {
  require_same_shape(y, dy, "tanh_backward");
  Tensor dx(y.shape());
  for (std::size_t i = 0; i < y.size(); ++i) dx[i] = dy[i] * (1.0 - y[i] * y[i]);
  return dx;
}

Tensor softmax(const Tensor& x) {
  require_finite(x.data(), "softmax input");
  Tensor y = x;
  softmax_inplace(y.data());
  return y;
}

Tensor softmax_backward(const Tensor& y, const Tensor& dy) {
  require_same_shape(y, dy, "softmax_backward");
  double inner = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) inner += y[i] * dy[i];
  Tensor dx(y.shape());
  for (std::size_t i = 0; i < y.size(); ++i) dx[i] = y[i] * (dy[i] - inner);
  return dx;
}

double cross_entropy(const Tensor& target, const Tensor& pred,
                     double clamp_eps) {
  require_same_shape(target, pred, "cross_entropy");
  double loss = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (target[i] != 0.0) loss -= target[i] * std::log(clamp_prob(pred[i], clamp_eps));
  }
  return loss;
}

Tensor cross_entropy_grad(const Tensor& target, const Tensor& pred,
                          double clamp_eps) {
  require_same_shape(target, pred, "cross_entropy_grad");
  Tensor g(pred.shape());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double p = pred[i];
    if (target[i] != 0.0 && p > clamp_eps && p < 1.0 - clamp_eps) {
      g[i] = -target[i] / p;
    }
  }
  return g;
}

double binary_cross_entropy(double target, double pred, double clamp_eps) {
  const double p = clamp_prob(pred, clamp_eps);
  double loss = 0.0;
  if (target != 0.0) loss -= target * std::log(p);
  if (target != 1.0) loss -= (1.0 - target) * std::log(1.0 - p);
  return loss;
}

double binary_cross_entropy_grad(double target, double pred, double clamp_eps) {
  if (pred <= clamp_eps || pred >= 1.0 - clamp_eps) return 0.0;
  return -target / pred + (1.0 - target) / (1.0 - pred);
}

double binary_cross_entropy(const Tensor& target, const Tensor& pred,
                            double clamp_eps) {
  require_same_shape(target, pred, "binary_cross_entropy");
  double loss = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    loss += binary_cross_entropy(target[i], pred[i], clamp_eps);
  }
  return loss;
}

Tensor binary_cross_entropy_grad(const Tensor& target, const Tensor& pred,
                                 double clamp_eps) {
  require_same_shape(target, pred, "binary_cross_entropy_grad");
  Tensor g(pred.shape());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    g[i] = binary_cross_entropy_grad(target[i], pred[i], clamp_eps);
  }
  return g;
}

}  // namespace snapdial
