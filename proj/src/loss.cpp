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

#include "seqrec/loss.hpp"

#include <cmath>
#include <stdexcept>

#include "seqrec/util.hpp"

namespace seqrec {

double LossSpec::weight(int popularity_bin) const {
  if (kind == LossKind::kXent || delta == 0.0) return 1.0;
  return std::exp(-delta * static_cast<double>(popularity_bin));
}

std::string LossSpec::to_string() const {
  return kind == LossKind::kXent ? "xent" : "diversity(" + format_fixed(delta, 4) + ")";
}

LossSpec LossSpec::parse(const std::string& kind, double delta) {
  if (delta < 0.0) throw std::invalid_argument("diversity bias must be >= 0");
  if (kind == "xent") return {LossKind::kXent, 0.0};
  if (kind == "diversity") return {LossKind::kDiversity, delta};
  throw std::invalid_argument("unknown loss '" + kind + "' (expected xent or diversity)");
}

double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& logits) {
  const double m = logits.maxCoeff();
  return m + std::log((logits.array() - m).exp().sum());
}

Eigen::VectorXd softmax(const Eigen::Ref<const Eigen::VectorXd>& logits) {
  Eigen::VectorXd e = (logits.array() - logits.maxCoeff()).exp();
  return e / e.sum();
}

double xent_loss(const Eigen::Ref<const Eigen::VectorXd>& logits, int correct) {
  if (correct < 0 || correct >= logits.size())
    throw std::out_of_range("xent_loss: correct item out of range");
  return log_sum_exp(logits) - logits[correct];
}

double diversity_loss(const Eigen::Ref<const Eigen::VectorXd>& logits, int correct,
                      int p_correct, double delta) {
  if (delta < 0.0) throw std::invalid_argument("diversity_loss: delta must be >= 0");
  return xent_loss(logits, correct) / std::exp(delta * static_cast<double>(p_correct));
}

}  // namespace seqrec
