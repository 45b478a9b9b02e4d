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

#ifndef SEQREC_BASELINES_HPP_
#define SEQREC_BASELINES_HPP_

#include <span>
#include <utility>
#include <vector>

#include "seqrec/dataset.hpp"
#include "seqrec/popularity.hpp"
#include "seqrec/recommender.hpp"

namespace seqrec {

// First-order Markov chain over items (a bigram model): counts of j -> m for
// every adjacent pair in the training sequences.
class MarkovChain : public Recommender {
 public:
  struct Successor {
    ItemId item;
    int count;
    friend bool operator==(const Successor&, const Successor&) = default;
  };

  MarkovChain(std::span<const UserSequence> train, PopularityTable popularity);

  std::string name() const override { return "markov"; }
  // Top successors of the last history item, then popularity backfill.
  std::vector<ItemId> recommend(const UserSequence& history, std::size_t k,
                                const ItemSet& exclude) const override;

  // Sorted by (count desc, item asc).
  std::span<const Successor> successors(ItemId from) const { return successors_.at(from); }
  int count(ItemId from, ItemId to) const;
  std::size_t num_items() const { return successors_.size(); }

 private:
  std::vector<std::vector<Successor>> successors_;
  PopularityTable popularity_;
};

// Cosine similarity between two item sets: |a ∩ b| / sqrt(|a| |b|).
double cosine_similarity(std::span<const ItemId> a, std::span<const ItemId> b);

// User-based nearest neighbours over training users with cosine similarity.
class UserKnn : public Recommender {
 public:
  struct Neighbor {
    std::size_t train_index;  // position in the training set
    double similarity;
  };

  UserKnn(std::span<const UserSequence> train, std::size_t num_items, std::size_t k_neighbors,
          PopularityTable popularity);

  std::string name() const override { return "knn"; }
  std::vector<ItemId> recommend(const UserSequence& history, std::size_t k,
                                const ItemSet& exclude) const override;

  // c_iu for every training user, in training-set order.
  std::vector<double> similarities(const UserSequence& history) const;
  // The k_neighbors most similar training users (ties by position ascending),
  // returned in ascending position order.
  std::vector<Neighbor> neighbors(const UserSequence& history) const;
  // s_ij = sum over neighbours u of c_iu * 1(j in S_u), for every item.
  std::vector<double> scores(const UserSequence& history) const;

  std::size_t k_neighbors() const { return k_neighbors_; }
  void set_k_neighbors(std::size_t k);
  std::size_t num_train_users() const { return sets_.size(); }
  std::span<const ItemId> train_set(std::size_t index) const { return sets_.at(index); }

 private:
  std::vector<std::vector<ItemId>> sets_;            // sorted item sets
  std::vector<std::vector<std::uint32_t>> users_of_;  // item -> training positions
  std::size_t num_items_;
  std::size_t k_neighbors_;
  PopularityTable popularity_;
};

struct OracleRow {
  std::size_t t = 0;
  double sps = 0.0;             // fraction of users
  double precision = 0.0;       // mean prec@k
  double recall = 0.0;          // mean rec@k, raw
  double recall_normalized = 0.0;  // recall / recall at t = catalog size
};

// A perfect recommender restricted to the t most popular items, evaluated
// with the half-split protocol on the given users.
std::vector<OracleRow> oracle_curve(std::span<const UserSequence> users,
                                    const PopularityTable& popularity,
                                    std::span<const std::size_t> cutoffs, std::size_t k = 10);

// CSV `t,sps,prec,rec_normalized`.
void write_oracle_csv(std::span<const OracleRow> rows, const std::string& path);

}  // namespace seqrec

#endif  // SEQREC_BASELINES_HPP_
