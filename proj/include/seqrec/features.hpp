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

#ifndef SEQREC_FEATURES_HPP_
#define SEQREC_FEATURES_HPP_

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "seqrec/dataset.hpp"

namespace seqrec {

// Which side-information blocks are appended to the one-hot item input.
struct FeatureBlocks {
  bool user = false;
  bool item = false;
  bool interaction = false;

  bool any() const { return user || item || interaction; }
  std::string to_string() const;  // "none" or e.g. "user,item"
  static FeatureBlocks parse(const std::string& s);

  friend bool operator==(const FeatureBlocks&, const FeatureBlocks&) = default;
};

// Movielens 1M side information as indicator blocks.
//
// user block:        age range (7) | sex (2) | occupation (21)
// item block:        release decade (one-hot over the decades present) | genres (18, multi-hot)
// interaction block: one-hot over the distinct rating values of the log
class SideFeatures {
 public:
  static constexpr int kAgeRanges = 7;
  static constexpr int kSexes = 2;
  static constexpr int kOccupations = 21;
  static constexpr int kGenres = 18;
  static constexpr std::array<int, kAgeRanges> kAgeCodes = {1, 18, 25, 35, 45, 50, 56};
  static const std::array<std::string, kGenres>& genre_names();

  SideFeatures() = default;

  int user_width() const { return has_users_ ? kAgeRanges + kSexes + kOccupations : 0; }
  int item_width() const {
    return has_items_ ? static_cast<int>(decades_.size()) + kGenres : 0;
  }
  int interaction_width() const { return static_cast<int>(rating_values_.size()); }
  int width(const FeatureBlocks& blocks) const;

  bool has_users() const { return has_users_; }
  bool has_items() const { return has_items_; }

  // Active positions inside the respective block.
  std::span<const int> user_active(UserId u) const { return user_active_.at(u); }
  std::span<const int> item_active(ItemId i) const { return item_active_.at(i); }
  int rating_index(int rating) const;
  int item_decade(ItemId i) const { return item_decade_.at(i); }
  const std::vector<int>& decades() const { return decades_; }

  // Interaction block only; used when no users.dat/movies.dat is available.
  static SideFeatures ratings_only(const InteractionLog& log);

  friend SideFeatures load_side_features(std::istream& users, std::istream& movies,
                                         const InteractionLog& log);

 private:
  bool has_users_ = false;
  bool has_items_ = false;
  std::vector<std::array<int, 3>> user_active_;
  std::vector<std::vector<int>> item_active_;
  std::vector<int> item_decade_;
  std::vector<int> decades_;
  std::vector<int> rating_values_;
};

// users.dat: UserID::Gender::Age::Occupation::Zip
// movies.dat: MovieID::Title (YYYY)::Genre|Genre|...
SideFeatures load_side_features(const std::filesystem::path& users_path,
                                const std::filesystem::path& movies_path,
                                const InteractionLog& log);
SideFeatures load_side_features(std::istream& users, std::istream& movies,
                                const InteractionLog& log);

}  // namespace seqrec

#endif  // SEQREC_FEATURES_HPP_
