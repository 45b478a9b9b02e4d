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

#include "seqrec/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "seqrec/errors.hpp"
#include "seqrec/util.hpp"

namespace seqrec {

namespace {

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void clip_gradient(NetworkParameters& grad, double max_norm) {
  if (max_norm <= 0.0) return;
  const double norm = std::sqrt(grad.squared_norm());
  if (norm > max_norm) grad.add_scaled(grad, max_norm / norm - 1.0);
}

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (validation_every < 1) throw std::invalid_argument("validation_every must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (clip_norm < 0.0) throw std::invalid_argument("clip_norm must be >= 0");
  if (max_seconds < 0.0) throw std::invalid_argument("max_seconds must be >= 0");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (loss.delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  if (network.hidden_size < 1) throw std::invalid_argument("hidden_size must be >= 1");
  if (network.layers < 1 || network.layers > 2) throw std::invalid_argument("layers must be 1 or 2");
  if (network.bidirectional && network.layers != 1)
    throw std::invalid_argument("bidirectional requires layers == 1");
  optimizer.validate();
}

std::string TrainConfig::to_key_values() const {
  std::ostringstream out;
  out << "cell=" << to_string(network.cell) << "\n"
      << "hidden=" << network.hidden_size << "\n"
      << "layers=" << network.layers << "\n"
      << "bidirectional=" << (network.bidirectional ? 1 : 0) << "\n"
      << "init_seed=" << network.init_seed << "\n"
      << "optimizer=" << to_string(optimizer.kind) << "\n"
      << "lr=" << exact(optimizer.learning_rate) << "\n"
      << "epsilon=" << exact(optimizer.epsilon) << "\n"
      << "momentum=" << exact(optimizer.momentum) << "\n"
      << "loss=" << (loss.kind == LossKind::kXent ? "xent" : "diversity") << "\n"
      << "delta=" << exact(loss.kind == LossKind::kXent ? 0.0 : loss.delta) << "\n"
      << "features=" << features.to_string() << "\n"
      << "epochs=" << epochs << "\n"
      << "validation_every=" << validation_every << "\n"
      << "shuffle_seed=" << shuffle_seed << "\n"
      << "batch_size=" << batch_size << "\n"
      << "clip_norm=" << exact(clip_norm) << "\n"
      << "max_seconds=" << exact(max_seconds) << "\n"
      << "k=" << k << "\n";
  return out.str();
}

std::string TrainConfig::digest() const {
  Fnv1a h;
  h.update(to_key_values());
  return h.hex();
}

void TrainingLog::write_csv(std::ostream& out, bool include_seconds) const {
  out << "sequences,epoch,seconds,train_loss,val_sps\n";
  for (const auto& r : rows)
    out << r.sequences << "," << format_fixed(r.epoch, 6) << ","
        << (include_seconds ? format_fixed(r.seconds, 3) : std::string("0")) << ","
        << format_fixed(r.train_loss, 6) << ","
        << (std::isnan(r.val_sps) ? std::string("nan") : format_fixed(r.val_sps, 4)) << "\n";
}

void TrainingLog::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  write_csv(out);
}

EvaluationReport evaluate(const Recommender& recommender, std::span<const UserSequence> users,
                          std::size_t k, ReportMetadata metadata) {
  if (metadata.method.empty()) metadata.method = recommender.name();
  std::vector<UserMetrics> rows;
  rows.reserve(users.size());
  std::size_t skipped = 0;
  for (const auto& seq : users) {
    if (seq.size() < 2) {
      ++skipped;
      continue;
    }
    auto [history, future] = half_split(seq);
    const auto history_items = history.items();
    const ItemSet exclude(history_items.begin(), history_items.end());
    const auto recs = recommender.recommend(history, k, exclude);
    ItemSet distinct;
    for (ItemId r : recs) {
      if (exclude.contains(r) || !distinct.insert(r).second)
        throw std::logic_error(recommender.name() + " returned a seen or repeated item");
    }
    if (recs.size() > k) throw std::logic_error(recommender.name() + " returned more than k items");
    rows.push_back(score_user(seq.user, recs, future.items()));
  }
  if (skipped > 0)
    std::cerr << "warning: " << skipped << " users with fewer than 2 events not evaluated\n";
  return aggregate(std::move(rows), k, std::move(metadata));
}

TrainResult train(const TrainConfig& config, const DatasetSplit& split,
                  std::shared_ptr<const SideFeatures> features, const PopularityTable& popularity,
                  const ProgressCallback& progress) {
  config.validate();
  if (split.train.empty()) throw DataError("train: no training users");
  const std::size_t catalog = popularity.num_items();
  InputEncoder encoder(catalog, std::move(features), config.features);
  NetworkConfig net = config.network;
  net.input_size = encoder.input_size();
  net.output_size = static_cast<int>(catalog);
  net.validate();

  NetworkParameters params = NetworkParameters::initialize(net);
  Optimizer optimizer(config.optimizer, params);
  NetworkParameters batch_grad = NetworkParameters::zeros(net);
  std::size_t in_batch = 0;

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  TrainingLog log;
  NetworkParameters best = params;
  double best_sps = -1.0;
  std::size_t best_seen = 0;
  std::size_t seen = 0;
  double loss_sum = 0.0;
  std::size_t loss_count = 0;
  const bool has_validation = !split.validation.empty();

  auto record = [&] {
    TrainingLogRow row;
    row.sequences = seen;
    row.epoch = static_cast<double>(seen) / static_cast<double>(split.train.size());
    row.train_loss = loss_count ? loss_sum / static_cast<double>(loss_count) : 0.0;
    row.val_sps = std::numeric_limits<double>::quiet_NaN();
    if (has_validation) {
      RnnRecommender snapshot(net, params, encoder);
      row.val_sps = evaluate(snapshot, split.validation, config.k).sps;
      if (row.val_sps > best_sps) {
        best_sps = row.val_sps;
        best = params;
        best_seen = seen;
      }
    }
    row.seconds = elapsed();
    log.rows.push_back(row);
    loss_sum = 0.0;
    loss_count = 0;
    if (progress) progress(row);
  };

  auto step = [&](NetworkParameters& grad) {
    clip_gradient(grad, config.clip_norm);
    optimizer.apply(params, grad);
  };

  Rng rng(config.shuffle_seed);
  std::vector<std::size_t> order(split.train.size());
  bool out_of_time = false;
  for (int epoch = 0; epoch < config.epochs && !out_of_time; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (std::size_t idx : order) {
      const auto& seq = split.train[idx];
      if (seq.size() < 2) continue;
      const auto steps = encoder.training_steps(seq, popularity);
      BackwardResult r;
      try {
        r = backward(net, params, steps, config.loss);
      } catch (const NumericFault& e) {
        throw NumericFault("training aborted on user " + std::to_string(seq.user) + ": " +
                           e.what());
      }
      if (!std::isfinite(r.mean_loss))
        throw NumericFault("training aborted on user " + std::to_string(seq.user) +
                           ": non-finite loss");
      loss_sum += r.mean_loss;
      ++loss_count;
      if (config.batch_size == 1) {
        step(r.gradients);
      } else {
        batch_grad.add_scaled(r.gradients, 1.0 / static_cast<double>(config.batch_size));
        if (++in_batch == config.batch_size) {
          step(batch_grad);
          batch_grad.set_zero();
          in_batch = 0;
        }
      }
      ++seen;
      if (seen % config.validation_every == 0) record();
      if (config.max_seconds > 0.0 && elapsed() > config.max_seconds) {
        out_of_time = true;
        break;
      }
    }
  }
  if (in_batch > 0) {
    batch_grad.add_scaled(batch_grad, static_cast<double>(config.batch_size) /
                                          static_cast<double>(in_batch) - 1.0);
    step(batch_grad);
  }
  if (seen == 0) throw DataError("train: no training user has 2 or more events");
  if (log.rows.empty() || log.rows.back().sequences != seen) record();
  if (!has_validation) {
    best = params;
    best_seen = seen;
    best_sps = std::numeric_limits<double>::quiet_NaN();
  }

  OptimizerSnapshot snapshot{optimizer.settings(), optimizer.accumulators(), optimizer.steps()};
  return TrainResult{RnnRecommender(net, std::move(best), encoder), std::move(log), best_sps,
                     best_seen, std::move(snapshot)};
}

GridResult grid_search(std::span<const TrainConfig> grid, const DatasetSplit& split,
                       std::shared_ptr<const SideFeatures> features,
                       const PopularityTable& popularity, const ProgressCallback& progress) {
  if (grid.empty()) throw std::invalid_argument("grid_search: empty grid");
  GridResult result;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    result.runs.push_back(train(grid[i], split, features, popularity, progress));
    if (result.runs[i].best_val_sps > result.runs[result.best].best_val_sps) result.best = i;
  }
  return result;
}

KnnTuning tune_knn(const DatasetSplit& split, std::size_t num_items,
                   const PopularityTable& popularity, std::span<const std::size_t> grid) {
  if (grid.empty()) throw std::invalid_argument("tune_knn: empty grid");
  if (split.validation.empty()) throw DataError("tune_knn: no validation users");
  KnnTuning tuning;
  UserKnn knn(split.train, num_items, 1, popularity);
  double best = -1.0;
  for (std::size_t k : grid) {
    if (k < 1 || k > knn.num_train_users()) continue;
    knn.set_k_neighbors(k);
    const double sps = evaluate(knn, split.validation, 10).sps;
    tuning.validation_sps.emplace_back(k, sps);
    if (sps > best) {
      best = sps;
      tuning.best_k = k;
    }
  }
  if (tuning.validation_sps.empty())
    throw DataError("tune_knn: every grid value exceeds the training-user count");
  return tuning;
}

ModelFile to_model_file(const TrainResult& result, std::uint64_t catalog_digest,
                        const TrainConfig& config) {
  ModelFile file;
  file.config = result.model.config();
  file.params = result.model.params();
  file.features = result.model.encoder().blocks();
  file.catalog_digest = catalog_digest;
  file.optimizer = result.optimizer;
  std::istringstream kv(config.to_key_values());
  std::string line;
  while (std::getline(kv, line)) {
    auto eq = line.find('=');
    file.metadata["train." + line.substr(0, eq)] = line.substr(eq + 1);
  }
  file.metadata["config_digest"] = config.digest();
  file.metadata["best_sequences"] = std::to_string(result.best_sequences);
  return file;
}

RnnRecommender from_model_file(const ModelFile& file, std::size_t catalog,
                               std::shared_ptr<const SideFeatures> features) {
  if (static_cast<std::size_t>(file.config.output_size) != catalog)
    throw DataError("model output size " + std::to_string(file.config.output_size) +
                    " does not match the catalog (" + std::to_string(catalog) + " items)");
  InputEncoder encoder(catalog, std::move(features), file.features);
  return RnnRecommender(file.config, file.params, std::move(encoder));
}

}  // namespace seqrec
