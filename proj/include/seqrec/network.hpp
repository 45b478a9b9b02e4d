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

#ifndef SEQREC_NETWORK_HPP_
#define SEQREC_NETWORK_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "seqrec/dataset.hpp"
#include "seqrec/loss.hpp"
#include "seqrec/recommender.hpp"

namespace seqrec {

enum class CellKind { kLstm, kGru };

std::string to_string(CellKind kind);
CellKind parse_cell_kind(const std::string& name);

struct NetworkConfig {
  CellKind cell = CellKind::kLstm;
  int hidden_size = 20;
  int layers = 1;              // 1 or 2
  bool bidirectional = false;  // only with layers == 1
  int input_size = 0;          // catalog + feature block widths
  int output_size = 0;         // catalog
  std::uint64_t init_seed = 1;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;

  int gates() const { return cell == CellKind::kLstm ? 4 : 3; }
  int num_cells() const { return bidirectional ? 2 : layers; }
  int top_width() const { return bidirectional ? 2 * hidden_size : hidden_size; }
  int cell_input_size(int cell_index) const {
    return (bidirectional || cell_index == 0) ? input_size : hidden_size;
  }

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

// Weights of one recurrent cell. Gate rows are stacked: LSTM [i f o g],
// GRU [z r n].
struct CellParameters {
  Eigen::MatrixXd input_weights;      // gates*H x input
  Eigen::MatrixXd recurrent_weights;  // gates*H x H
  Eigen::VectorXd bias;               // gates*H
};

// cells: one per layer, or [forward, backward] when bidirectional. The output
// layer reads the concatenated top hidden state, so for a bidirectional
// network its logits are the sum of both directions' affine outputs.
struct NetworkParameters {
  std::vector<CellParameters> cells;
  Eigen::MatrixXd output_weights;  // output_size x top_width
  Eigen::VectorXd output_bias;     // output_size

  static NetworkParameters zeros(const NetworkConfig& config);
  // Glorot-uniform weights, zero biases, LSTM forget-gate bias 1.
  static NetworkParameters initialize(const NetworkConfig& config);

  // Flat views in a fixed order: per cell W, U, b; then output W, b.
  std::vector<std::string> block_names() const;
  std::vector<std::span<double>> blocks();
  std::vector<std::span<const double>> blocks() const;
  std::size_t size() const;

  void set_zero();
  void add_scaled(const NetworkParameters& other, double scale);
  double squared_norm() const;
  bool all_finite() const;
};

// Indices of the active (value 1) input neurons of one step.
using SparseInput = std::vector<int>;

struct StepState {
  std::vector<Eigen::VectorXd> h;  // per cell
  std::vector<Eigen::VectorXd> c;  // per cell, LSTM only (zero-sized for GRU)
};

StepState initial_state(const NetworkConfig& config);

// One recurrent step of a unidirectional network: advances state in place
// and returns the output logits. Bidirectional networks have no streaming
// form; use final_logits.
Eigen::VectorXd forward_step(const NetworkConfig& config, const NetworkParameters& params,
                             const SparseInput& input, StepState& state);

// Logits after reading the whole history. For bidirectional networks the
// backward direction reads the history in reverse.
Eigen::VectorXd final_logits(const NetworkConfig& config, const NetworkParameters& params,
                             std::span<const SparseInput> history);

// Top-k by logit (ties by item id ascending) after masking excluded items.
std::vector<ItemId> top_k_items(const Eigen::Ref<const Eigen::VectorXd>& logits, std::size_t k,
                                const ItemSet& exclude);

std::vector<ItemId> predict_topk(const NetworkConfig& config, const NetworkParameters& params,
                                 std::span<const SparseInput> history, std::size_t k,
                                 const ItemSet& exclude);

// One teacher-forced step: read input, predict target.
struct TrainingStep {
  SparseInput input;
  ItemId target = 0;
  int popularity_bin = 1;
};

struct BackwardResult {
  NetworkParameters gradients;
  double mean_loss = 0.0;
};

// Mean per-step loss over the sequence. For bidirectional networks the
// backward direction at step t reads inputs t, t-1, ..., 0 only.
double sequence_loss(const NetworkConfig& config, const NetworkParameters& params,
                     std::span<const TrainingStep> steps, const LossSpec& loss);

// Backpropagation through time of sequence_loss.
BackwardResult backward(const NetworkConfig& config, const NetworkParameters& params,
                        std::span<const TrainingStep> steps, const LossSpec& loss);

}  // namespace seqrec

#endif  // SEQREC_NETWORK_HPP_
