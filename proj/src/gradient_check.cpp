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

#include "seqrec/gradient_check.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "seqrec/util.hpp"

namespace seqrec {

double relative_error(double analytic, double numeric, double floor) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / scale;
}

std::string GradientCheckReport::summary() const {
  std::ostringstream out;
  for (const auto& b : blocks) {
    out << b.name << ": max rel err " << b.max_relative_error << " over " << b.entries
        << " entries";
    if (b.entries) out << " (worst #" << b.worst_index << " analytic " << b.analytic
                       << " numeric " << b.numeric << ")";
    out << "\n";
  }
  out << (passed ? "PASSED" : "FAILED in " + failed_block) << ", max " << max_relative_error;
  return out.str();
}

GradientCheckReport check_gradients(const NetworkConfig& config, const NetworkParameters& params,
                                    std::span<const TrainingStep> steps, const LossSpec& loss,
                                    const GradientCheckOptions& options) {
  const BackwardResult analytic = backward(config, params, steps, loss);
  NetworkParameters probe = params;
  auto probe_blocks = probe.blocks();
  auto grad_blocks = analytic.gradients.blocks();
  auto names = probe.block_names();

  GradientCheckReport report;
  for (std::size_t b = 0; b < probe_blocks.size(); ++b) {
    BlockCheck check;
    check.name = names[b];
    check.entries = probe_blocks[b].size();
    for (std::size_t i = 0; i < probe_blocks[b].size(); ++i) {
      double& theta = probe_blocks[b][i];
      const double saved = theta;
      theta = saved + options.step;
      const double up = sequence_loss(config, probe, steps, loss);
      theta = saved - options.step;
      const double down = sequence_loss(config, probe, steps, loss);
      theta = saved;
      const double numeric = (up - down) / (2.0 * options.step);
      const double err = relative_error(grad_blocks[b][i], numeric, options.magnitude_floor);
      if (err > check.max_relative_error || i == 0) {
        check.max_relative_error = err;
        check.worst_index = i;
        check.analytic = grad_blocks[b][i];
        check.numeric = numeric;
      }
    }
    report.max_relative_error = std::max(report.max_relative_error, check.max_relative_error);
    if (check.max_relative_error > options.tolerance && report.passed) {
      report.passed = false;
      report.failed_block = check.name;
    }
    report.blocks.push_back(std::move(check));
  }
  return report;
}

GradientCheckReport gradient_check(const NetworkConfig& config, std::uint64_t seed,
                                   double tolerance, const LossSpec& loss,
                                   std::size_t sequence_length) {
  config.validate();
  if (config.hidden_size > 8 || config.output_size > 10)
    throw std::invalid_argument("gradient_check: use hidden_size <= 8 and a catalog <= 10");
  if (sequence_length == 0) throw std::invalid_argument("gradient_check: empty sequence");

  Rng rng(seed);
  NetworkParameters params = NetworkParameters::zeros(config);
  for (auto block : params.blocks())
    for (double& v : block) v = rng.uniform(-0.5, 0.5);

  const int catalog = config.output_size;
  const int extra = config.input_size - catalog;
  std::vector<TrainingStep> steps(sequence_length);
  for (auto& s : steps) {
    s.input.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(catalog))));
    if (extra > 0)
      s.input.push_back(catalog + static_cast<int>(rng.below(static_cast<std::uint64_t>(extra))));
    s.target = static_cast<ItemId>(rng.below(static_cast<std::uint64_t>(catalog)));
    s.popularity_bin = 1 + static_cast<int>(rng.below(10));
  }
  GradientCheckOptions options;
  options.tolerance = tolerance;
  return check_gradients(config, params, steps, loss, options);
}

}  // namespace seqrec
