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

#ifndef SEQREC_HARNESS_HPP_
#define SEQREC_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "seqrec/baselines.hpp"
#include "seqrec/dataset.hpp"
#include "seqrec/encoding.hpp"
#include "seqrec/features.hpp"
#include "seqrec/loss.hpp"
#include "seqrec/metrics.hpp"
#include "seqrec/model_io.hpp"
#include "seqrec/network.hpp"
#include "seqrec/optimizer.hpp"
#include "seqrec/popularity.hpp"

namespace seqrec {

struct TrainConfig {
  // input_size and output_size are derived from the data and feature blocks.
  NetworkConfig network;
  OptimizerSettings optimizer;
  LossSpec loss;
  FeatureBlocks features;
  int epochs = 10;
  std::size_t validation_every = 1000;  // training sequences between validations
  std::uint64_t shuffle_seed = 1;
  std::size_t batch_size = 1;   // sequences per optimizer update
  double clip_norm = 0.0;       // global gradient norm clip; 0 disables
  double max_seconds = 0.0;     // wall-clock budget; 0 disables
  std::size_t k = 10;

  void validate() const;
  // Canonical key=value text; digest() hashes it.
  std::string to_key_values() const;
  std::string digest() const;
};

struct TrainingLogRow {
  std::size_t sequences = 0;
  double epoch = 0.0;
  double seconds = 0.0;
  double train_loss = 0.0;  // mean sequence loss since the previous row
  double val_sps = 0.0;     // percent
};

struct TrainingLog {
  std::vector<TrainingLogRow> rows;

  // CSV `sequences,epoch,seconds,train_loss,val_sps`.
  void write_csv(std::ostream& out, bool include_seconds = true) const;
  void save_csv(const std::string& path) const;
};

struct TrainResult {
  RnnRecommender model;  // best-validation snapshot
  TrainingLog log;
  double best_val_sps = 0.0;
  std::size_t best_sequences = 0;
  OptimizerSnapshot optimizer;  // state at the end of training
};

using ProgressCallback = std::function<void(const TrainingLogRow&)>;

TrainResult train(const TrainConfig& config, const DatasetSplit& split,
                  std::shared_ptr<const SideFeatures> features, const PopularityTable& popularity,
                  const ProgressCallback& progress = {});

// Half-split protocol: each user's first half goes to the recommender (with
// its items excluded), the second half is the ground truth.
EvaluationReport evaluate(const Recommender& recommender, std::span<const UserSequence> users,
                          std::size_t k = 10, ReportMetadata metadata = {});

struct GridResult {
  std::size_t best = 0;
  std::vector<TrainResult> runs;
};

// Trains every configuration; the best is the first with maximal validation sps.
GridResult grid_search(std::span<const TrainConfig> grid, const DatasetSplit& split,
                       std::shared_ptr<const SideFeatures> features,
                       const PopularityTable& popularity, const ProgressCallback& progress = {});

inline constexpr std::size_t kDefaultKnnGridValues[] = {50, 100, 200, 300, 500};
inline constexpr std::span<const std::size_t> kDefaultKnnGrid{kDefaultKnnGridValues};

struct KnnTuning {
  std::size_t best_k = 0;
  std::vector<std::pair<std::size_t, double>> validation_sps;  // (k, sps %)
};

// Picks the neighbourhood size with the best validation sps (ties: smaller k).
KnnTuning tune_knn(const DatasetSplit& split, std::size_t num_items,
                   const PopularityTable& popularity,
                   std::span<const std::size_t> grid = kDefaultKnnGrid);

ModelFile to_model_file(const TrainResult& result, std::uint64_t catalog_digest,
                        const TrainConfig& config);
RnnRecommender from_model_file(const ModelFile& file, std::size_t catalog,
                               std::shared_ptr<const SideFeatures> features);

}  // namespace seqrec

#endif  // SEQREC_HARNESS_HPP_
