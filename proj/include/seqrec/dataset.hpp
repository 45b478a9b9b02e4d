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

#ifndef SEQREC_DATASET_HPP_
#define SEQREC_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace seqrec {

// Dense ids, 0..n-1, assigned in ascending order of the original ids.
using UserId = std::int32_t;
using ItemId = std::int32_t;

struct Interaction {
  UserId user = 0;
  ItemId item = 0;
  int rating = 0;
  std::int64_t timestamp = 0;

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

// One user's history ordered by (timestamp, item) ascending.
struct UserSequence {
  UserId user = 0;
  std::vector<Interaction> events;

  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }
  std::vector<ItemId> items() const;

  friend bool operator==(const UserSequence&, const UserSequence&) = default;
};

// A rating event as it appears in a file, before re-indexing.
struct RawInteraction {
  std::int64_t user = 0;
  std::int64_t item = 0;
  int rating = 0;
  std::int64_t timestamp = 0;
};

class InteractionLog {
 public:
  InteractionLog() = default;

  // Re-indexes users and items densely and sorts every user history. When a
  // (user, item) pair repeats, only its earliest event is kept.
  static InteractionLog from_raw(std::span<const RawInteraction> raw);

  std::size_t num_users() const { return user_ids_.size(); }
  std::size_t num_items() const { return item_ids_.size(); }
  std::size_t num_interactions() const { return num_interactions_; }
  std::size_t dropped_duplicates() const { return dropped_duplicates_; }

  std::int64_t original_user_id(UserId u) const { return user_ids_.at(u); }
  std::int64_t original_item_id(ItemId i) const { return item_ids_.at(i); }
  const std::vector<std::int64_t>& original_item_ids() const { return item_ids_; }
  const std::vector<std::int64_t>& original_user_ids() const { return user_ids_; }

  // -1 when the original id is unknown.
  UserId find_user(std::int64_t original) const;
  ItemId find_item(std::int64_t original) const;

  // Sorted distinct rating values in the corpus.
  const std::vector<int>& rating_values() const { return rating_values_; }

  const UserSequence& sequence(UserId u) const { return sequences_.at(u); }
  const std::vector<UserSequence>& sequences() const { return sequences_; }

  // FNV-1a over the item mapping; identifies the output layer layout.
  std::uint64_t catalog_digest() const;

  friend bool operator==(const InteractionLog&, const InteractionLog&) = default;

 private:
  std::vector<std::int64_t> user_ids_;
  std::vector<std::int64_t> item_ids_;
  std::unordered_map<std::int64_t, UserId> user_index_;
  std::unordered_map<std::int64_t, ItemId> item_index_;
  std::vector<int> rating_values_;
  std::vector<UserSequence> sequences_;
  std::size_t num_interactions_ = 0;
  std::size_t dropped_duplicates_ = 0;
};

enum class RatingFormat {
  kMovielens1M,  // UserID::MovieID::Rating::Timestamp
  kGenericCsv,   // header user,item,rating,timestamp
};

RatingFormat parse_rating_format(const std::string& name);

InteractionLog load_ratings(const std::filesystem::path& path, RatingFormat format);
std::vector<RawInteraction> parse_ratings(std::istream& in, RatingFormat format,
                                          const std::string& source_name);

struct DatasetSplit {
  std::vector<UserSequence> train;
  std::vector<UserSequence> validation;
  std::vector<UserSequence> test;
  std::uint64_t seed = 0;
};

// Draws n_test then n_validation users uniformly at random among users with at
// least two events; everyone else is a training user. Deterministic in seed.
DatasetSplit split_users(const InteractionLog& log, std::size_t n_test,
                         std::size_t n_validation, std::uint64_t seed);

// Split manifest: one "role,original_user_id" line per user.
void save_split_manifest(const DatasetSplit& split, const InteractionLog& log,
                         const std::filesystem::path& path);
DatasetSplit load_split_manifest(const InteractionLog& log,
                                 const std::filesystem::path& path);

// history = first floor(L/2) events, future = the rest.
std::pair<UserSequence, UserSequence> half_split(const UserSequence& seq);

}  // namespace seqrec

#endif  // SEQREC_DATASET_HPP_
