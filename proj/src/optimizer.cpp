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

#include <cmath>
#include <stdexcept>

#include "seqrec/errors.hpp"

namespace seqrec {

std::string to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kSgd: return "sgd";
    case OptimizerKind::kMomentum: return "momentum";
    case OptimizerKind::kAdagrad: return "adagrad";
  }
  return "?";
}

OptimizerKind parse_optimizer_kind(const std::string& name) {
  if (name == "sgd") return OptimizerKind::kSgd;
  if (name == "momentum") return OptimizerKind::kMomentum;
  if (name == "adagrad") return OptimizerKind::kAdagrad;
  throw std::invalid_argument("unknown optimizer '" + name +
                              "' (expected sgd, momentum or adagrad)");
}

void OptimizerSettings::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be > 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (momentum < 0.0 || momentum >= 1.0) throw std::invalid_argument("momentum must be in [0, 1)");
}

void apply_update(const OptimizerSettings& settings, std::span<double> theta,
                  std::span<const double> gradient, std::span<double> accumulator) {
  if (theta.size() != gradient.size() ||
      (settings.kind != OptimizerKind::kSgd && accumulator.size() != theta.size()))
    throw std::invalid_argument("apply_update: shape mismatch");
  const double eta = settings.learning_rate;
  switch (settings.kind) {
    case OptimizerKind::kSgd:
      for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= eta * gradient[i];
      break;
    case OptimizerKind::kMomentum:
      for (std::size_t i = 0; i < theta.size(); ++i) {
        accumulator[i] = settings.momentum * accumulator[i] + eta * gradient[i];
        theta[i] -= accumulator[i];
      }
      break;
    case OptimizerKind::kAdagrad:
      for (std::size_t i = 0; i < theta.size(); ++i) {
        const double g = gradient[i];
        accumulator[i] += g * g;
        theta[i] -= eta * g / std::sqrt(accumulator[i] + settings.epsilon);
      }
      break;
  }
}

Optimizer::Optimizer(OptimizerSettings settings, const NetworkParameters& shape)
    : settings_(settings) {
  settings_.validate();
  for (auto b : shape.blocks()) accumulators_.emplace_back(b.size(), 0.0);
}

void Optimizer::apply(NetworkParameters& params, const NetworkParameters& gradients) {
  auto theta = params.blocks();
  auto grads = gradients.blocks();
  if (theta.size() != accumulators_.size() || grads.size() != accumulators_.size())
    throw std::invalid_argument("optimizer: parameter layout changed");
  for (std::size_t b = 0; b < grads.size(); ++b)
    for (double g : grads[b])
      if (!std::isfinite(g)) throw NumericFault("optimizer: non-finite gradient, update rejected");
  for (std::size_t b = 0; b < theta.size(); ++b)
    apply_update(settings_, theta[b], grads[b], accumulators_[b]);
  ++steps_;
}

void Optimizer::restore(std::vector<std::vector<double>> accumulators, std::uint64_t steps) {
  if (accumulators.size() != accumulators_.size())
    throw std::invalid_argument("optimizer restore: block count mismatch");
  for (std::size_t b = 0; b < accumulators.size(); ++b)
    if (accumulators[b].size() != accumulators_[b].size())
      throw std::invalid_argument("optimizer restore: block size mismatch");
  accumulators_ = std::move(accumulators);
  steps_ = steps;
}

}  // namespace seqrec
