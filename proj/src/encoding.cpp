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

#include "seqrec/encoding.hpp"

#include <stdexcept>

namespace seqrec {

InputEncoder::InputEncoder(std::size_t catalog, std::shared_ptr<const SideFeatures> features,
                           FeatureBlocks blocks)
    : catalog_(catalog), features_(std::move(features)), blocks_(blocks) {
  if (catalog == 0) throw std::invalid_argument("encoder: empty catalog");
  if (blocks_.any() && !features_)
    throw std::invalid_argument("encoder: feature blocks requested without side features");
  if (blocks_.user && !features_->has_users())
    throw std::invalid_argument("encoder: user features unavailable (no users.dat)");
  if (blocks_.item && !features_->has_items())
    throw std::invalid_argument("encoder: item features unavailable (no movies.dat)");
  int offset = static_cast<int>(catalog);
  if (blocks_.user) {
    user_offset_ = offset;
    offset += features_->user_width();
  }
  if (blocks_.item) {
    item_offset_ = offset;
    offset += features_->item_width();
  }
  if (blocks_.interaction) {
    interaction_offset_ = offset;
    offset += features_->interaction_width();
  }
  input_size_ = offset;
}

SparseInput InputEncoder::encode(const Interaction& e) const {
  if (e.item < 0 || static_cast<std::size_t>(e.item) >= catalog_)
    throw std::out_of_range("encoder: item " + std::to_string(e.item) + " outside the catalog");
  SparseInput in;
  in.push_back(e.item);
  if (blocks_.user)
    for (int i : features_->user_active(e.user)) in.push_back(user_offset_ + i);
  if (blocks_.item)
    for (int i : features_->item_active(e.item)) in.push_back(item_offset_ + i);
  if (blocks_.interaction) in.push_back(interaction_offset_ + features_->rating_index(e.rating));
  return in;
}

std::vector<SparseInput> InputEncoder::encode_history(const UserSequence& seq) const {
  std::vector<SparseInput> out;
  out.reserve(seq.size());
  for (const auto& e : seq.events) out.push_back(encode(e));
  return out;
}

std::vector<TrainingStep> InputEncoder::training_steps(const UserSequence& seq,
                                                       const PopularityTable& popularity) const {
  std::vector<TrainingStep> steps;
  if (seq.size() < 2) return steps;
  steps.reserve(seq.size() - 1);
  for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
    const ItemId target = seq.events[t + 1].item;
    steps.push_back({encode(seq.events[t]), target, popularity.bin_of.at(target)});
  }
  return steps;
}

RnnRecommender::RnnRecommender(NetworkConfig config, NetworkParameters params,
                               InputEncoder encoder)
    : config_(config), params_(std::move(params)), encoder_(std::move(encoder)) {
  config_.validate();
  if (config_.input_size != encoder_.input_size())
    throw std::invalid_argument("rnn: network input size " + std::to_string(config_.input_size) +
                                " does not match the encoder (" +
                                std::to_string(encoder_.input_size()) + ")");
}

std::string RnnRecommender::name() const {
  std::string n = config_.bidirectional ? "bi" : "";
  n += to_string(config_.cell);
  if (config_.layers > 1) n += "x" + std::to_string(config_.layers);
  return n + "-" + std::to_string(config_.hidden_size);
}

std::vector<ItemId> RnnRecommender::recommend(const UserSequence& history, std::size_t k,
                                              const ItemSet& exclude) const {
  auto inputs = encoder_.encode_history(history);
  return predict_topk(config_, params_, inputs, k, exclude);
}

}  // namespace seqrec
