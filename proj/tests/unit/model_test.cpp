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
#include <set>

#include "fixture.hpp"
#include "oracles.hpp"
#include "snapdial/error.hpp"
#include "snapdial/numerics/gradcheck.hpp"

namespace snapdial {
namespace {

oracle::Mat to_mat(const Tensor& t) {
  oracle::Mat m(t.rows(), oracle::Vec(t.cols()));
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.cols(); ++c) m[r][c] = t.at(r, c);
  }
  return m;
}

Vec random_vec(Rng& rng, std::size_t n) {
  Vec v(n);
  rng.fill_uniform(v, -1.0, 1.0);
  return v;
}

TEST(Cell, MemAndHybridWithZeroConditioningAreAnLstm) {
  const std::size_t n = 6;
  Rng rng(9);
  Tensor w(Shape{4 * n, 3 * n}), wc(Shape{n, 2 * n});
  rng.fill_uniform(w.data(), -0.5, 0.5);
  rng.fill_uniform(wc.data(), -0.5, 0.5);
  const Vec m(n, 0.0), x = random_vec(rng, n);
  const CellState prev{random_vec(rng, n), random_vec(rng, n)};
  const auto ref = oracle::lstm_step(to_mat(w), to_mat(wc), m, x, prev.h, prev.c);
  for (Variant v : {Variant::kMem, Variant::kHybrid}) {
    const CellState out = cell_step(v, w, &wc, m, x, prev);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(out.h[k], ref.h[k], 1e-12);
      EXPECT_NEAR(out.c[k], ref.c[k], 1e-12);
    }
  }
}

TEST(Cell, ZeroParameters) {
  const std::size_t n = 4;
  const Tensor w(Shape{4 * n, 3 * n}), wc(Shape{n, 2 * n});
  const Vec m{0.2, -0.4, 0.6, 1.0}, x{1, 2, 3, 4};
  const CellState prev = CellState::zeros(n);
  const CellState lm = cell_step(Variant::kLm, w, nullptr, m, x, prev);
  const CellState hy = cell_step(Variant::kHybrid, w, &wc, m, x, prev);
  for (std::size_t k = 0; k < n; ++k) {
    EXPECT_EQ(lm.h[k], 0.0);
    EXPECT_EQ(hy.h[k], 0.5 * m[k]);
  }
}

TEST(Cell, ShapeMismatchThrows) {
  const Tensor w(Shape{16, 12});
  EXPECT_THROW(cell_step(Variant::kLm, w, nullptr, Vec(3), Vec(4), CellState::zeros(4)),
               DimensionError);
  EXPECT_THROW(cell_step(Variant::kMem, w, nullptr, Vec(4), Vec(4), CellState::zeros(4)),
               DimensionError);
}

struct GradCase {
  Variant variant;
  bool attention;
  bool snapshot;
};

class ModelGradTest : public ::testing::TestWithParam<GradCase> {};

TEST_P(ModelGradTest, AnalyticMatchesNumeric) {
  const GradCase g = GetParam();
  ModelConfig c;
  c.variant = g.variant;
  c.attention = g.attention;
  c.snapshot = g.snapshot;
  c.hidden = 5;
  IndicatorSpec spec{{"offered", "[v.name]"}};
  Model m(c, 9, {{"food", 4}, {"phone", 1}}, spec, 2);
  Rng rng(21);
  m.initialize(rng);
  TurnExample t;
  t.user = {4, 5, 6};
  t.sys = {5, 8, 3};
  t.x = match_vector(1);
  t.beliefs = {{0.1, 0.2, 0.3, 0.4}, {0.6}};
  t.snapshot = {{1.0, 1.0}, {1.0, 0.0}, {1.0, 0.0}};
  auto params = m.parameters();
  const auto r = grad_check([&](bool acc) { return m.turn_loss(t, acc).total; }, params, 1e-4, 0,
                            1e-6);
  EXPECT_LT(r.max_rel_error, 1e-4) << r.worst_parameter << "[" << r.worst_index << "]";
}

INSTANTIATE_TEST_SUITE_P(Cells, ModelGradTest,
                         ::testing::Values(GradCase{Variant::kLm, false, false},
                                           GradCase{Variant::kMem, true, false},
                                           GradCase{Variant::kHybrid, false, true},
                                           GradCase{Variant::kHybrid, true, true}));

TEST(Model, SnapshotNeedsRoomInTheConditioningVector) {
  ModelConfig c;
  c.snapshot = true;
  c.hidden = 8;
  IndicatorSpec spec;
  spec.ids.assign(8, "[v.name]");
  EXPECT_THROW(Model(c, 10, {{"food", 3}}, spec), ConfigError);
}

TEST(Model, JsonRoundTripIsExact) {
  Model m = testing::random_model(testing::model_config(Variant::kMem, true, true), 3);
  Model back = Model::from_json(m.to_json());
  const auto a = m.parameters(), b = back.parameters();
  ASSERT_EQ(a.size(), b.size());
  std::set<std::string> names;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(names.insert(a[i]->name).second) << "duplicate " << a[i]->name;
    EXPECT_EQ(a[i]->value, b[i]->value) << a[i]->name;
  }
  const auto& w = testing::small_world();
  const auto prepared = prepare_dialogue(w.ws.split.test[0], w.pipeline(), m.config(),
                                         m.indicators());
  EXPECT_EQ(back.turn_loss(prepared.turns[0], false).total,
            m.turn_loss(prepared.turns[0], false).total);
}

TEST(Model, TeacherForcingAgreesWithTurnLoss) {
  Model m = testing::random_model(testing::model_config(Variant::kHybrid, false, false), 4);
  const auto& w = testing::small_world();
  const auto prepared =
      prepare_dialogue(w.ws.split.test[1], w.pipeline(), m.config(), m.indicators());
  for (const auto& t : prepared.turns) {
    double ll = 0.0;
    for (const auto& s : m.forward_teacher(t)) ll += s.log_prob;
    EXPECT_NEAR(-ll, m.turn_loss(t, false).token, 1e-9);
  }
}

}  // namespace
}  // namespace snapdial
