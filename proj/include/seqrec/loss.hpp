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

#ifndef SEQREC_LOSS_HPP_
#define SEQREC_LOSS_HPP_

#include <string>

#include <Eigen/Dense>

namespace seqrec {

enum class LossKind { kXent, kDiversity };

struct LossSpec {
  LossKind kind = LossKind::kXent;
  double delta = 0.0;  // diversity bias, only read for kDiversity

  // Per-step weight exp(-delta * p) applied to the cross-entropy.
  double weight(int popularity_bin) const;
  std::string to_string() const;
  static LossSpec parse(const std::string& kind, double delta);
};

double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& logits);
Eigen::VectorXd softmax(const Eigen::Ref<const Eigen::VectorXd>& logits);

// -log softmax(logits)[correct], computed as logsumexp(logits) - logits[correct].
double xent_loss(const Eigen::Ref<const Eigen::VectorXd>& logits, int correct);

// xent_loss / exp(delta * p_correct).
double diversity_loss(const Eigen::Ref<const Eigen::VectorXd>& logits, int correct,
                      int p_correct, double delta);

}  // namespace seqrec

#endif  // SEQREC_LOSS_HPP_
