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

#ifndef SEQREC_OPTIMIZER_HPP_
#define SEQREC_OPTIMIZER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seqrec/network.hpp"

namespace seqrec {

enum class OptimizerKind { kSgd, kMomentum, kAdagrad };

std::string to_string(OptimizerKind kind);
OptimizerKind parse_optimizer_kind(const std::string& name);

struct OptimizerSettings {
  OptimizerKind kind = OptimizerKind::kAdagrad;
  double learning_rate = 0.1;
  double epsilon = 1e-8;  // adagrad
  double momentum = 0.9;  // momentum

  void validate() const;
};

// Elementwise update of one parameter block.
//   sgd:      theta -= eta * g
//   momentum: v = mu * v + eta * g;  theta -= v
//   adagrad:  G += g^2;  theta -= eta * g / sqrt(G + eps)
// accumulator holds v or G and is ignored by sgd.
void apply_update(const OptimizerSettings& settings, std::span<double> theta,
                  std::span<const double> gradient, std::span<double> accumulator);

class Optimizer {
 public:
  Optimizer(OptimizerSettings settings, const NetworkParameters& shape);

  // Rejects the whole update (leaving params untouched) when a gradient entry
  // is not finite.
  void apply(NetworkParameters& params, const NetworkParameters& gradients);

  const OptimizerSettings& settings() const { return settings_; }
  std::uint64_t steps() const { return steps_; }
  const std::vector<std::vector<double>>& accumulators() const { return accumulators_; }
  // For resuming from a model file; shapes must match.
  void restore(std::vector<std::vector<double>> accumulators, std::uint64_t steps);

 private:
  OptimizerSettings settings_;
  std::vector<std::vector<double>> accumulators_;
  std::uint64_t steps_ = 0;
};

}  // namespace seqrec

#endif  // SEQREC_OPTIMIZER_HPP_
