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

#ifndef SEQREC_GRADIENT_CHECK_HPP_
#define SEQREC_GRADIENT_CHECK_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seqrec/network.hpp"

namespace seqrec {

struct GradientCheckOptions {
  double step = 1e-5;
  double tolerance = 1e-4;
  // Denominator floor of the relative error, so that entries whose true
  // gradient is ~0 are judged on an absolute scale.
  double magnitude_floor = 1e-6;
};

struct BlockCheck {
  std::string name;
  std::size_t entries = 0;
  double max_relative_error = 0.0;
  std::size_t worst_index = 0;
  double analytic = 0.0;  // at worst_index
  double numeric = 0.0;
};

struct GradientCheckReport {
  std::vector<BlockCheck> blocks;
  double max_relative_error = 0.0;
  bool passed = true;
  std::string failed_block;  // first block above tolerance

  std::string summary() const;
};

// |a - n| / max(|a|, |n|, floor)
double relative_error(double analytic, double numeric, double floor);

// Perturbs every parameter entry and compares central differences of
// sequence_loss with the analytic gradients from backward().
GradientCheckReport check_gradients(const NetworkConfig& config, const NetworkParameters& params,
                                    std::span<const TrainingStep> steps, const LossSpec& loss,
                                    const GradientCheckOptions& options = {});

// Random small instance: parameters uniform in [-0.5, 0.5], one-hot item
// inputs plus one random extra input neuron when input_size > output_size.
// Requires hidden_size <= 8 and output_size <= 10.
GradientCheckReport gradient_check(const NetworkConfig& config, std::uint64_t seed,
                                   double tolerance, const LossSpec& loss = {},
                                   std::size_t sequence_length = 4);

}  // namespace seqrec

#endif  // SEQREC_GRADIENT_CHECK_HPP_
