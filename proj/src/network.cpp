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

#include "seqrec/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "seqrec/errors.hpp"
#include "seqrec/util.hpp"

namespace seqrec {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::Ref;
using Eigen::VectorXd;

std::string to_string(CellKind kind) { return kind == CellKind::kLstm ? "lstm" : "gru"; }

CellKind parse_cell_kind(const std::string& name) {
  if (name == "lstm") return CellKind::kLstm;
  if (name == "gru") return CellKind::kGru;
  throw std::invalid_argument("unknown cell '" + name + "' (expected lstm or gru)");
}

void NetworkConfig::validate() const {
  if (hidden_size < 1) throw std::invalid_argument("hidden_size must be >= 1");
  if (layers < 1 || layers > 2) throw std::invalid_argument("layers must be 1 or 2");
  if (bidirectional && layers != 1)
    throw std::invalid_argument("bidirectional requires layers == 1");
  if (output_size < 1) throw std::invalid_argument("output_size must be >= 1");
  if (input_size < output_size)
    throw std::invalid_argument("input_size must cover the catalog (>= output_size)");
}

// --- parameters -------------------------------------------------------------

NetworkParameters NetworkParameters::zeros(const NetworkConfig& config) {
  config.validate();
  const Index H = config.hidden_size;
  const Index G = config.gates();
  NetworkParameters p;
  for (int i = 0; i < config.num_cells(); ++i) {
    CellParameters c;
    c.input_weights = MatrixXd::Zero(G * H, config.cell_input_size(i));
    c.recurrent_weights = MatrixXd::Zero(G * H, H);
    c.bias = VectorXd::Zero(G * H);
    p.cells.push_back(std::move(c));
  }
  p.output_weights = MatrixXd::Zero(config.output_size, config.top_width());
  p.output_bias = VectorXd::Zero(config.output_size);
  return p;
}

NetworkParameters NetworkParameters::initialize(const NetworkConfig& config) {
  NetworkParameters p = zeros(config);
  Rng rng(config.init_seed);
  auto glorot = [&](MatrixXd& m, double fan_in, double fan_out) {
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i) m(i, j) = rng.uniform(-limit, limit);
  };
  const double H = config.hidden_size;
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    auto& c = p.cells[i];
    glorot(c.input_weights, static_cast<double>(c.input_weights.cols()), H);
    glorot(c.recurrent_weights, H, H);
    if (config.cell == CellKind::kLstm) c.bias.segment(config.hidden_size, config.hidden_size).setOnes();
  }
  glorot(p.output_weights, config.top_width(), config.output_size);
  return p;
}

std::vector<std::string> NetworkParameters::block_names() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string prefix = "cell" + std::to_string(i) + ".";
    names.push_back(prefix + "input_weights");
    names.push_back(prefix + "recurrent_weights");
    names.push_back(prefix + "bias");
  }
  names.push_back("output.weights");
  names.push_back("output.bias");
  return names;
}

std::vector<std::span<double>> NetworkParameters::blocks() {
  std::vector<std::span<double>> out;
  auto add = [&](auto& m) { out.emplace_back(m.data(), static_cast<std::size_t>(m.size())); };
  for (auto& c : cells) {
    add(c.input_weights);
    add(c.recurrent_weights);
    add(c.bias);
  }
  add(output_weights);
  add(output_bias);
  return out;
}

std::vector<std::span<const double>> NetworkParameters::blocks() const {
  auto spans = const_cast<NetworkParameters*>(this)->blocks();
  return {spans.begin(), spans.end()};
}

std::size_t NetworkParameters::size() const {
  std::size_t n = 0;
  for (auto b : blocks()) n += b.size();
  return n;
}

void NetworkParameters::set_zero() {
  for (auto b : blocks()) std::fill(b.begin(), b.end(), 0.0);
}

void NetworkParameters::add_scaled(const NetworkParameters& other, double scale) {
  auto mine = blocks();
  auto theirs = other.blocks();
  if (mine.size() != theirs.size()) throw std::invalid_argument("add_scaled: shape mismatch");
  for (std::size_t b = 0; b < mine.size(); ++b) {
    if (mine[b].size() != theirs[b].size())
      throw std::invalid_argument("add_scaled: shape mismatch");
    for (std::size_t i = 0; i < mine[b].size(); ++i) mine[b][i] += scale * theirs[b][i];
  }
}

double NetworkParameters::squared_norm() const {
  double s = 0;
  for (auto b : blocks())
    for (double v : b) s += v * v;
  return s;
}

bool NetworkParameters::all_finite() const {
  for (auto b : blocks())
    for (double v : b)
      if (!std::isfinite(v)) return false;
  return true;
}

StepState initial_state(const NetworkConfig& config) {
  config.validate();
  StepState s;
  for (int i = 0; i < config.num_cells(); ++i) {
    s.h.push_back(VectorXd::Zero(config.hidden_size));
    s.c.push_back(config.cell == CellKind::kLstm ? VectorXd::Zero(config.hidden_size)
                                                 : VectorXd());
  }
  return s;
}

namespace {

// Activations of one cell over a run, one column per step.
struct CellTrace {
  MatrixXd gates;   // post-activation, gates*H x T
  MatrixXd c;       // LSTM cell state
  MatrixXd tanh_c;  // LSTM
  MatrixXd rh;      // GRU: r ⊙ h_prev
  MatrixXd h;
};

void sigmoid_inplace(Ref<VectorXd> v) { v = (1.0 + (-v.array()).exp()).inverse().matrix(); }

void lstm_step(const CellParameters& p, const Ref<const VectorXd>& wx,
               const Ref<const VectorXd>& h_prev, const Ref<const VectorXd>& c_prev,
               Ref<VectorXd> gates, Ref<VectorXd> c, Ref<VectorXd> tanh_c, Ref<VectorXd> h) {
  const Index H = h.size();
  gates.noalias() = p.recurrent_weights * h_prev;
  gates += wx + p.bias;
  sigmoid_inplace(gates.head(3 * H));
  gates.tail(H) = gates.tail(H).array().tanh().matrix();
  c = gates.segment(H, H).cwiseProduct(c_prev) + gates.head(H).cwiseProduct(gates.tail(H));
  tanh_c = c.array().tanh().matrix();
  h = gates.segment(2 * H, H).cwiseProduct(tanh_c);
}

void gru_step(const CellParameters& p, const Ref<const VectorXd>& wx,
              const Ref<const VectorXd>& h_prev, Ref<VectorXd> gates, Ref<VectorXd> rh,
              Ref<VectorXd> h) {
  const Index H = h.size();
  const auto& U = p.recurrent_weights;
  gates.head(2 * H).noalias() = U.topRows(2 * H) * h_prev;
  gates.head(2 * H) += wx.head(2 * H) + p.bias.head(2 * H);
  sigmoid_inplace(gates.head(2 * H));
  rh = gates.segment(H, H).cwiseProduct(h_prev);
  gates.tail(H).noalias() = U.bottomRows(H) * rh;
  gates.tail(H) += wx.tail(H) + p.bias.tail(H);
  gates.tail(H) = gates.tail(H).array().tanh().matrix();
  const auto z = gates.head(H).array();
  h = ((1.0 - z) * h_prev.array() + z * gates.tail(H).array()).matrix();
}

void run_cell(CellKind kind, const CellParameters& p, const Ref<const MatrixXd>& wx,
              CellTrace& tr) {
  const Index T = wx.cols();
  const Index H = p.recurrent_weights.cols();
  tr.gates.resize(wx.rows(), T);
  tr.h.resize(H, T);
  const VectorXd zero = VectorXd::Zero(H);
  if (kind == CellKind::kLstm) {
    tr.c.resize(H, T);
    tr.tanh_c.resize(H, T);
    for (Index t = 0; t < T; ++t) {
      lstm_step(p, wx.col(t), t ? VectorXd(tr.h.col(t - 1)) : zero,
                t ? VectorXd(tr.c.col(t - 1)) : zero, tr.gates.col(t), tr.c.col(t),
                tr.tanh_c.col(t), tr.h.col(t));
    }
  } else {
    tr.rh.resize(H, T);
    for (Index t = 0; t < T; ++t)
      gru_step(p, wx.col(t), t ? VectorXd(tr.h.col(t - 1)) : zero, tr.gates.col(t),
               tr.rh.col(t), tr.h.col(t));
  }
}

// h_{t-1} for every step of a run (zero for t = 0).
MatrixXd previous_states(const MatrixXd& h) {
  MatrixXd prev = MatrixXd::Zero(h.rows(), h.cols());
  if (h.cols() > 1) prev.rightCols(h.cols() - 1) = h.leftCols(h.cols() - 1);
  return prev;
}

// Given dL/dh_t from outside the cell (output layer or the layer above),
// returns dL/d(pre-activation) per step and accumulates the recurrent
// weight and bias gradients into grad.
MatrixXd backprop_cell(CellKind kind, const CellParameters& p, const CellTrace& tr,
                       const Ref<const MatrixXd>& dh_ext, CellParameters& grad) {
  const Index T = tr.h.cols();
  const Index H = tr.h.rows();
  MatrixXd da(tr.gates.rows(), T);
  VectorXd dh_next = VectorXd::Zero(H);
  VectorXd dc_next = VectorXd::Zero(H);
  const MatrixXd h_prev = previous_states(tr.h);
  const auto& U = p.recurrent_weights;

  if (kind == CellKind::kLstm) {
    const MatrixXd c_prev = previous_states(tr.c);
    for (Index t = T - 1; t >= 0; --t) {
      const VectorXd dh = dh_ext.col(t) + dh_next;
      const auto g = tr.gates.col(t).array();
      const auto i = g.segment(0, H), f = g.segment(H, H), o = g.segment(2 * H, H),
                 cand = g.segment(3 * H, H);
      const auto tc = tr.tanh_c.col(t).array();
      const VectorXd dc = (dc_next.array() + dh.array() * o * (1.0 - tc * tc)).matrix();
      auto a = da.col(t).array();
      a.segment(0, H) = dc.array() * cand * i * (1.0 - i);
      a.segment(H, H) = dc.array() * c_prev.col(t).array() * f * (1.0 - f);
      a.segment(2 * H, H) = dh.array() * tc * o * (1.0 - o);
      a.segment(3 * H, H) = dc.array() * i * (1.0 - cand * cand);
      dc_next = (dc.array() * f).matrix();
      dh_next.noalias() = U.transpose() * da.col(t);
    }
    grad.recurrent_weights.noalias() += da * h_prev.transpose();
  } else {
    for (Index t = T - 1; t >= 0; --t) {
      const VectorXd dh = dh_ext.col(t) + dh_next;
      const auto g = tr.gates.col(t).array();
      const auto z = g.segment(0, H), r = g.segment(H, H), n = g.segment(2 * H, H);
      const auto hp = h_prev.col(t).array();
      auto a = da.col(t).array();
      a.segment(2 * H, H) = dh.array() * z * (1.0 - n * n);
      const VectorXd drh = U.bottomRows(H).transpose() * da.col(t).tail(H);
      a.segment(H, H) = drh.array() * hp * r * (1.0 - r);
      a.segment(0, H) = dh.array() * (n - hp) * z * (1.0 - z);
      dh_next = (dh.array() * (1.0 - z) + drh.array() * r).matrix();
      dh_next.noalias() += U.topRows(2 * H).transpose() * da.col(t).head(2 * H);
    }
    grad.recurrent_weights.topRows(2 * H).noalias() += da.topRows(2 * H) * h_prev.transpose();
    grad.recurrent_weights.bottomRows(H).noalias() += da.bottomRows(H) * tr.rh.transpose();
  }
  grad.bias += da.rowwise().sum();
  return da;
}

MatrixXd project_sparse(const MatrixXd& W, std::span<const SparseInput> inputs) {
  MatrixXd wx = MatrixXd::Zero(W.rows(), static_cast<Index>(inputs.size()));
  for (std::size_t t = 0; t < inputs.size(); ++t)
    for (int idx : inputs[t]) {
      if (idx < 0 || idx >= W.cols())
        throw std::out_of_range("input index " + std::to_string(idx) + " at step " +
                                std::to_string(t) + " outside [0, " + std::to_string(W.cols()) +
                                ")");
      wx.col(static_cast<Index>(t)) += W.col(idx);
    }
  return wx;
}

void scatter_sparse(MatrixXd& dW, std::span<const SparseInput> inputs, const MatrixXd& da) {
  for (std::size_t t = 0; t < inputs.size(); ++t)
    for (int idx : inputs[t]) dW.col(idx) += da.col(static_cast<Index>(t));
}

MatrixXd reversed_prefix(const MatrixXd& wx, Index t) {
  MatrixXd rev(wx.rows(), t + 1);
  for (Index s = 0; s <= t; ++s) rev.col(s) = wx.col(t - s);
  return rev;
}

std::vector<SparseInput> inputs_of(std::span<const TrainingStep> steps) {
  std::vector<SparseInput> in;
  in.reserve(steps.size());
  for (const auto& s : steps) in.push_back(s.input);
  return in;
}

// Output layer + loss over every step. When grad is given, fills dtop with
// dL/d(top hidden) and accumulates the output-layer gradients.
double output_stage(const NetworkParameters& params, const MatrixXd& top,
                    std::span<const TrainingStep> steps, const LossSpec& loss,
                    NetworkParameters* grad, MatrixXd* dtop) {
  constexpr Index kChunk = 128;
  const Index T = top.cols();
  const double inv_t = 1.0 / static_cast<double>(T);
  const Index C = params.output_weights.rows();
  if (dtop) dtop->resize(top.rows(), T);
  double total = 0.0;
  for (Index s = 0; s < T; s += kChunk) {
    const Index n = std::min(kChunk, T - s);
    MatrixXd logits = params.output_weights * top.middleCols(s, n);
    logits.colwise() += params.output_bias;
    for (Index j = 0; j < n; ++j) {
      const auto& step = steps[static_cast<std::size_t>(s + j)];
      if (step.target < 0 || step.target >= C)
        throw std::out_of_range("target " + std::to_string(step.target) + " at step " +
                                std::to_string(s + j) + " outside the catalog");
      auto col = logits.col(j);
      if (!col.allFinite())
        throw NumericFault("non-finite logits at step " + std::to_string(s + j));
      const double lse = log_sum_exp(col);
      const double w = loss.weight(step.popularity_bin);
      total += w * (lse - col[step.target]);
      if (grad) {
        col = (col.array() - lse).exp().matrix();
        col[step.target] -= 1.0;
        col *= w * inv_t;
      }
    }
    if (grad) {
      grad->output_weights.noalias() += logits * top.middleCols(s, n).transpose();
      grad->output_bias += logits.rowwise().sum();
      dtop->middleCols(s, n).noalias() = params.output_weights.transpose() * logits;
    }
  }
  return total * inv_t;
}

// Top hidden states for every training step, plus what backward needs.
struct ForwardPass {
  std::vector<MatrixXd> wx;         // per cell (bidirectional: forward, backward)
  std::vector<CellTrace> traces;    // per cell; unused for the backward direction
  MatrixXd top;
};

ForwardPass forward_sequence(const NetworkConfig& config, const NetworkParameters& params,
                             std::span<const SparseInput> inputs) {
  ForwardPass fp;
  const Index T = static_cast<Index>(inputs.size());
  const Index H = config.hidden_size;
  if (!config.bidirectional) {
    fp.traces.resize(static_cast<std::size_t>(config.layers));
    fp.wx.push_back(project_sparse(params.cells[0].input_weights, inputs));
    run_cell(config.cell, params.cells[0], fp.wx[0], fp.traces[0]);
    for (int l = 1; l < config.layers; ++l) {
      fp.wx.push_back(params.cells[l].input_weights * fp.traces[l - 1].h);
      run_cell(config.cell, params.cells[l], fp.wx[l], fp.traces[l]);
    }
    fp.top = fp.traces.back().h;
    return fp;
  }
  fp.traces.resize(2);
  fp.wx.push_back(project_sparse(params.cells[0].input_weights, inputs));
  fp.wx.push_back(project_sparse(params.cells[1].input_weights, inputs));
  run_cell(config.cell, params.cells[0], fp.wx[0], fp.traces[0]);
  fp.top.resize(2 * H, T);
  fp.top.topRows(H) = fp.traces[0].h;
  CellTrace scratch;
  for (Index t = 0; t < T; ++t) {
    run_cell(config.cell, params.cells[1], reversed_prefix(fp.wx[1], t), scratch);
    fp.top.bottomRows(H).col(t) = scratch.h.col(t);
  }
  return fp;
}

}  // namespace

Eigen::VectorXd forward_step(const NetworkConfig& config, const NetworkParameters& params,
                             const SparseInput& input, StepState& state) {
  if (config.bidirectional)
    throw std::invalid_argument("forward_step: bidirectional networks have no streaming form");
  const Index H = config.hidden_size;
  const Index G = config.gates();
  if (state.h.size() != static_cast<std::size_t>(config.num_cells()))
    throw std::invalid_argument("forward_step: state does not match the network");
  VectorXd x = project_sparse(params.cells[0].input_weights, std::span(&input, 1)).col(0);
  for (int l = 0; l < config.layers; ++l) {
    const auto& p = params.cells[l];
    if (l > 0) x = p.input_weights * state.h[l - 1];
    VectorXd gates(G * H), h(H);
    if (config.cell == CellKind::kLstm) {
      VectorXd c(H), tc(H);
      lstm_step(p, x, state.h[l], state.c[l], gates, c, tc, h);
      state.c[l] = std::move(c);
    } else {
      VectorXd rh(H);
      gru_step(p, x, state.h[l], gates, rh, h);
    }
    state.h[l] = std::move(h);
  }
  VectorXd logits = params.output_weights * state.h.back() + params.output_bias;
  if (!logits.allFinite()) throw NumericFault("non-finite logits in forward_step");
  return logits;
}

Eigen::VectorXd final_logits(const NetworkConfig& config, const NetworkParameters& params,
                             std::span<const SparseInput> history) {
  if (history.empty()) throw std::invalid_argument("final_logits: empty history");
  const Index H = config.hidden_size;
  const Index T = static_cast<Index>(history.size());
  VectorXd top(config.top_width());
  if (!config.bidirectional) {
    ForwardPass fp = forward_sequence(config, params, history);
    top = fp.top.col(T - 1);
  } else {
    CellTrace fwd, bwd;
    MatrixXd wxf = project_sparse(params.cells[0].input_weights, history);
    MatrixXd wxb = project_sparse(params.cells[1].input_weights, history);
    run_cell(config.cell, params.cells[0], wxf, fwd);
    run_cell(config.cell, params.cells[1], reversed_prefix(wxb, T - 1), bwd);
    top.head(H) = fwd.h.col(T - 1);
    top.tail(H) = bwd.h.col(T - 1);
  }
  VectorXd logits = params.output_weights * top + params.output_bias;
  if (!logits.allFinite()) throw NumericFault("non-finite logits after the last step");
  return logits;
}

std::vector<ItemId> top_k_items(const Ref<const VectorXd>& logits, std::size_t k,
                                const ItemSet& exclude) {
  std::vector<ItemId> candidates;
  candidates.reserve(static_cast<std::size_t>(logits.size()));
  for (Index i = 0; i < logits.size(); ++i)
    if (!exclude.contains(static_cast<ItemId>(i))) candidates.push_back(static_cast<ItemId>(i));
  const std::size_t take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                    candidates.end(), [&](ItemId a, ItemId b) {
                      if (logits[a] != logits[b]) return logits[a] > logits[b];
                      return a < b;
                    });
  candidates.resize(take);
  return candidates;
}

std::vector<ItemId> predict_topk(const NetworkConfig& config, const NetworkParameters& params,
                                 std::span<const SparseInput> history, std::size_t k,
                                 const ItemSet& exclude) {
  return top_k_items(final_logits(config, params, history), k, exclude);
}

double sequence_loss(const NetworkConfig& config, const NetworkParameters& params,
                     std::span<const TrainingStep> steps, const LossSpec& loss) {
  if (steps.empty()) throw std::invalid_argument("sequence_loss: empty sequence");
  auto inputs = inputs_of(steps);
  ForwardPass fp = forward_sequence(config, params, inputs);
  return output_stage(params, fp.top, steps, loss, nullptr, nullptr);
}

BackwardResult backward(const NetworkConfig& config, const NetworkParameters& params,
                        std::span<const TrainingStep> steps, const LossSpec& loss) {
  if (steps.empty()) throw std::invalid_argument("backward: empty sequence");
  auto inputs = inputs_of(steps);
  const Index T = static_cast<Index>(steps.size());
  const Index H = config.hidden_size;
  BackwardResult result{NetworkParameters::zeros(config), 0.0};
  auto& grad = result.gradients;

  ForwardPass fp = forward_sequence(config, params, inputs);
  MatrixXd dtop;
  result.mean_loss = output_stage(params, fp.top, steps, loss, &grad, &dtop);

  if (!config.bidirectional) {
    MatrixXd dh = std::move(dtop);
    for (int l = config.layers - 1; l >= 0; --l) {
      MatrixXd da = backprop_cell(config.cell, params.cells[l], fp.traces[l], dh, grad.cells[l]);
      if (l > 0) {
        grad.cells[l].input_weights.noalias() += da * fp.traces[l - 1].h.transpose();
        dh.noalias() = params.cells[l].input_weights.transpose() * da;
      } else {
        scatter_sparse(grad.cells[0].input_weights, inputs, da);
      }
    }
  } else {
    MatrixXd daf =
        backprop_cell(config.cell, params.cells[0], fp.traces[0], dtop.topRows(H), grad.cells[0]);
    scatter_sparse(grad.cells[0].input_weights, inputs, daf);

    MatrixXd dwxb = MatrixXd::Zero(fp.wx[1].rows(), T);
    CellTrace scratch;
    for (Index t = 0; t < T; ++t) {
      run_cell(config.cell, params.cells[1], reversed_prefix(fp.wx[1], t), scratch);
      MatrixXd dh = MatrixXd::Zero(H, t + 1);
      dh.col(t) = dtop.bottomRows(H).col(t);
      MatrixXd da = backprop_cell(config.cell, params.cells[1], scratch, dh, grad.cells[1]);
      for (Index s = 0; s <= t; ++s) dwxb.col(t - s) += da.col(s);
    }
    scatter_sparse(grad.cells[1].input_weights, inputs, dwxb);
  }
  if (!grad.all_finite()) throw NumericFault("non-finite gradient");
  return result;
}

}  // namespace seqrec
