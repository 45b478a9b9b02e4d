// Copyright 2026 The seqrec Authors
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

#include "seqrec/optimizer.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "seqrec/errors.hpp"

namespace seqrec {
namespace {

OptimizerSettings settings(OptimizerKind kind, double lr) {
  OptimizerSettings s;
  s.kind = kind;
  s.learning_rate = lr;
  return s;
}

TEST(ApplyUpdate, AdagradFirstStep) {
  double theta = 1.0, g = 2.0, acc = 0.0;
  apply_update(settings(OptimizerKind::kAdagrad, 0.1), {&theta, 1}, {&g, 1}, {&acc, 1});
  EXPECT_DOUBLE_EQ(acc, 4.0);
  EXPECT_NEAR(theta, 1.0 - 0.1 * 2.0 / std::sqrt(4.0 + 1e-8), 1e-15);
  EXPECT_NEAR(theta, 0.9, 1e-9);
}

TEST(ApplyUpdate, ZeroGradientIsAFixedPoint) {
  for (auto kind : {OptimizerKind::kSgd, OptimizerKind::kMomentum, OptimizerKind::kAdagrad}) {
    double theta = 0.7, g = 0.0, acc = 0.0;
    for (int t = 0; t < 5; ++t)
      apply_update(settings(kind, 0.5), {&theta, 1}, {&g, 1}, {&acc, 1});
    EXPECT_EQ(theta, 0.7) << to_string(kind);
  }
}

TEST(ApplyUpdate, AdagradConstantGradientScalarSimulation) {
  const double eta = 0.1, g = 0.5, eps = 1e-8;
  double theta = 0.0, acc = 0.0;
  double sim = 0.0;
  for (int t = 1; t <= 50; ++t) {
    const double before = theta;
    apply_update(settings(OptimizerKind::kAdagrad, eta), {&theta, 1}, {&g, 1}, {&acc, 1});
    sim -= eta * g / std::sqrt(t * g * g + eps);
    EXPECT_NEAR(theta, sim, 1e-12);
    // step size shrinks as 1/sqrt(t)
    EXPECT_NEAR(before - theta, eta / std::sqrt(static_cast<double>(t)), 1e-7);
  }
}

TEST(ApplyUpdate, MomentumScalarSimulation) {
  double theta = 1.0, acc = 0.0, v = 0.0, sim = 1.0;
  auto s = settings(OptimizerKind::kMomentum, 0.05);
  for (int t = 0; t < 20; ++t) {
    const double g = 2.0 * theta;  // minimising theta^2
    apply_update(s, {&theta, 1}, {&g, 1}, {&acc, 1});
    v = 0.9 * v + 0.05 * (2.0 * sim);
    sim -= v;
    EXPECT_NEAR(theta, sim, 1e-14);
  }
}

TEST(ApplyUpdate, Sgd) {
  double theta[2] = {1.0, -1.0}, g[2] = {0.5, -2.0}, acc[2] = {0, 0};
  apply_update(settings(OptimizerKind::kSgd, 0.1), theta, g, acc);
  EXPECT_DOUBLE_EQ(theta[0], 0.95);
  EXPECT_DOUBLE_EQ(theta[1], -0.8);
}

TEST(Optimizer, RejectsNonFiniteUpdate) {
  NetworkConfig cfg;
  cfg.hidden_size = 2;
  cfg.input_size = cfg.output_size = 3;
  auto params = NetworkParameters::initialize(cfg);
  const auto before = params;
  Optimizer opt(settings(OptimizerKind::kAdagrad, 0.1), params);
  auto grad = NetworkParameters::zeros(cfg);
  grad.output_bias.setConstant(1.0);
  grad.cells[0].bias(1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(opt.apply(params, grad), NumericFault);
  EXPECT_EQ(params.output_bias, before.output_bias);
  EXPECT_EQ(opt.steps(), 0u);
  grad.cells[0].bias(1) = 0.0;
  opt.apply(params, grad);
  EXPECT_EQ(opt.steps(), 1u);
  EXPECT_NE(params.output_bias, before.output_bias);
}

TEST(Optimizer, RestoreContinuesIdentically) {
  NetworkConfig cfg;
  cfg.hidden_size = 2;
  cfg.input_size = cfg.output_size = 3;
  auto a = NetworkParameters::initialize(cfg);
  auto grad = NetworkParameters::zeros(cfg);
  grad.output_weights.setConstant(0.3);
  Optimizer one(settings(OptimizerKind::kAdagrad, 0.1), a);
  one.apply(a, grad);
  auto b = a;
  Optimizer two(settings(OptimizerKind::kAdagrad, 0.1), b);
  two.restore(one.accumulators(), one.steps());
  one.apply(a, grad);
  two.apply(b, grad);
  EXPECT_EQ(a.output_weights, b.output_weights);
  EXPECT_THROW(two.restore({}, 0), std::invalid_argument);
}

TEST(OptimizerSettings, Validation) {
  EXPECT_THROW(settings(OptimizerKind::kSgd, 0.0).validate(), std::invalid_argument);
  auto s = settings(OptimizerKind::kMomentum, 0.1);
  s.momentum = 1.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  EXPECT_EQ(parse_optimizer_kind("adagrad"), OptimizerKind::kAdagrad);
  EXPECT_THROW(parse_optimizer_kind("adam"), std::invalid_argument);
}

}  // namespace
}  // namespace seqrec
