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

#ifndef SEQREC_ENCODING_HPP_
#define SEQREC_ENCODING_HPP_

#include <memory>
#include <vector>

#include "seqrec/dataset.hpp"
#include "seqrec/features.hpp"
#include "seqrec/network.hpp"
#include "seqrec/popularity.hpp"

namespace seqrec {

// Maps an interaction to the active input neurons of the network:
//   [ item one-hot (catalog) | user block | item block | interaction block ]
// with only the enabled blocks present. The interaction block encodes the
// rating of the item being read at that step.
class InputEncoder {
 public:
  InputEncoder(std::size_t catalog, std::shared_ptr<const SideFeatures> features,
               FeatureBlocks blocks);

  int input_size() const { return input_size_; }
  std::size_t catalog() const { return catalog_; }
  const FeatureBlocks& blocks() const { return blocks_; }
  const std::shared_ptr<const SideFeatures>& features() const { return features_; }

  SparseInput encode(const Interaction& e) const;
  std::vector<SparseInput> encode_history(const UserSequence& seq) const;
  // L - 1 teacher-forced steps: read event t, predict event t + 1.
  std::vector<TrainingStep> training_steps(const UserSequence& seq,
                                           const PopularityTable& popularity) const;

 private:
  std::size_t catalog_;
  std::shared_ptr<const SideFeatures> features_;
  FeatureBlocks blocks_;
  int user_offset_ = 0;
  int item_offset_ = 0;
  int interaction_offset_ = 0;
  int input_size_ = 0;
};

// A trained recurrent network behind the Recommender interface.
class RnnRecommender : public Recommender {
 public:
  RnnRecommender(NetworkConfig config, NetworkParameters params, InputEncoder encoder);

  std::string name() const override;
  std::vector<ItemId> recommend(const UserSequence& history, std::size_t k,
                                const ItemSet& exclude) const override;

  const NetworkConfig& config() const { return config_; }
  const NetworkParameters& params() const { return params_; }
  NetworkParameters& mutable_params() { return params_; }
  const InputEncoder& encoder() const { return encoder_; }

 private:
  NetworkConfig config_;
  NetworkParameters params_;
  InputEncoder encoder_;
};

}  // namespace seqrec

#endif  // SEQREC_ENCODING_HPP_
