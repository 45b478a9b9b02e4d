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

#ifndef SEQREC_POPULARITY_HPP_
#define SEQREC_POPULARITY_HPP_

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include "seqrec/dataset.hpp"

namespace seqrec {

// Items ranked by training-set rating count, split into ten bins whose target
// sizes grow geometrically (ratio 2) from the most popular bin p = 10 to the
// least popular bin p = 1.
struct PopularityTable {
  static constexpr int kBins = 10;

  std::vector<ItemId> ranking;  // descending count, ties by ascending id
  std::vector<int> rank_of;     // inverse of ranking
  std::vector<int> count;       // per item
  std::vector<int> bin_of;      // per item, in 1..10
  std::array<int, kBins + 1> bin_size{};  // indexed by p; [0] unused

  std::size_t num_items() const { return ranking.size(); }
};

PopularityTable build_popularity(std::span<const UserSequence> train, std::size_t num_items);

// Bin sizes for a catalog of n items, indexed by p (entry 0 unused).
std::array<int, PopularityTable::kBins + 1> popularity_bin_sizes(std::size_t n);

// item,original_item_id,count,rank,bin
void save_popularity_csv(const PopularityTable& table, const InteractionLog& log,
                         const std::filesystem::path& path);

}  // namespace seqrec

#endif  // SEQREC_POPULARITY_HPP_
