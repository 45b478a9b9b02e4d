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

#ifndef SEQREC_RECOMMENDER_HPP_
#define SEQREC_RECOMMENDER_HPP_

#include <string>
#include <unordered_set>
#include <vector>

#include "seqrec/dataset.hpp"
#include "seqrec/popularity.hpp"

namespace seqrec {

using ItemSet = std::unordered_set<ItemId>;

// A trained model that turns the observed part of a user history into a
// top-k list. Implementations never return an excluded item or a duplicate.
class Recommender {
 public:
  virtual ~Recommender() = default;

  virtual std::string name() const = 0;
  virtual std::vector<ItemId> recommend(const UserSequence& history, std::size_t k,
                                        const ItemSet& exclude) const = 0;
};

// Appends the most popular items that are neither excluded nor already in
// recs until recs holds k items or the catalog is exhausted.
void backfill_by_popularity(std::vector<ItemId>& recs, std::size_t k, const ItemSet& exclude,
                            const PopularityTable& popularity);

class PopularityRecommender : public Recommender {
 public:
  explicit PopularityRecommender(PopularityTable popularity)
      : popularity_(std::move(popularity)) {}

  std::string name() const override { return "popularity"; }
  std::vector<ItemId> recommend(const UserSequence& history, std::size_t k,
                                const ItemSet& exclude) const override;

 private:
  PopularityTable popularity_;
};

}  // namespace seqrec

#endif  // SEQREC_RECOMMENDER_HPP_
