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

#include "seqrec/features.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "seqrec/errors.hpp"

namespace seqrec {
namespace {

InteractionLog small_log() {
  std::istringstream in("1::1::5::10\n1::2::3::20\n2::2::4::15\n2::3::1::5\n");
  return InteractionLog::from_raw(parse_ratings(in, RatingFormat::kMovielens1M, "r"));
}

const char* kUsers = "1::F::1::10::48067\n2::M::56::16::70072\n";
const char* kMovies =
    "1::Toy Story (1995)::Animation|Children's|Comedy\n"
    "2::Jumanji (1995)::Adventure|Children's|Fantasy\n"
    "3::Metropolis (1927)::Sci-Fi\n";

SideFeatures load(const char* users, const char* movies, const InteractionLog& log) {
  std::istringstream u(users), m(movies);
  return load_side_features(u, m, log);
}

TEST(SideFeatures, BlockWidths) {
  auto log = small_log();
  auto f = load(kUsers, kMovies, log);
  EXPECT_EQ(f.user_width(), 7 + 2 + 21);
  EXPECT_EQ(f.decades(), (std::vector<int>{1920, 1990}));
  EXPECT_EQ(f.item_width(), 2 + 18);
  EXPECT_EQ(f.interaction_width(), 4);  // ratings 1, 3, 4, 5
  EXPECT_EQ(f.width({true, false, false}), 30);
  EXPECT_EQ(f.width({true, true, true}), 30 + 20 + 4);
}

TEST(SideFeatures, UserOneHots) {
  auto log = small_log();
  auto f = load(kUsers, kMovies, log);
  auto a = f.user_active(log.find_user(1));
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[0], 0);           // age code 1 is the first range
  EXPECT_EQ(a[1], 7 + 1);       // F
  EXPECT_EQ(a[2], 9 + 10);      // occupation 10
  auto b = f.user_active(log.find_user(2));
  EXPECT_EQ(b[0], 6);           // 56+
  EXPECT_EQ(b[1], 7);           // M
  EXPECT_EQ(b[2], 9 + 16);
}

TEST(SideFeatures, MovieDecadeAndGenresMatchHandParse) {
  auto log = small_log();
  auto f = load(kUsers, kMovies, log);
  const ItemId toy = log.find_item(1);
  EXPECT_EQ(f.item_decade(toy), 1990);
  // decade index 1 (1990), then Animation=2, Children's=3, Comedy=4 after the decades.
  auto active = f.item_active(toy);
  EXPECT_EQ(std::vector<int>(active.begin(), active.end()), (std::vector<int>{1, 2 + 2, 2 + 3, 2 + 4}));
  auto metro = f.item_active(log.find_item(3));
  EXPECT_EQ(std::vector<int>(metro.begin(), metro.end()), (std::vector<int>{0, 2 + 14}));
}

TEST(SideFeatures, RatingIndex) {
  auto log = small_log();
  auto f = SideFeatures::ratings_only(log);
  EXPECT_FALSE(f.has_users());
  EXPECT_FALSE(f.has_items());
  EXPECT_EQ(f.rating_index(1), 0);
  EXPECT_EQ(f.rating_index(5), 3);
  EXPECT_THROW(f.rating_index(2), DataError);
}

TEST(SideFeatures, Errors) {
  auto log = small_log();
  EXPECT_THROW(load("1::F::1::10::1\n", kMovies, log), DataError);  // user 2 missing
  EXPECT_THROW(load(kUsers, "1::Toy Story (1995)::Animation\n", log), DataError);
  EXPECT_THROW(load(kUsers,
                    "1::Toy Story::Animation\n2::J (1995)::Fantasy\n3::M (1927)::Sci-Fi\n", log),
               std::exception);
  EXPECT_THROW(load(kUsers,
                    "1::T (1995)::Cartoon\n2::J (1995)::Fantasy\n3::M (1927)::Sci-Fi\n", log),
               std::exception);
  EXPECT_THROW(load("1::X::1::10::1\n2::M::56::16::1\n", kMovies, log), std::exception);
  EXPECT_THROW(load("1::F::2::10::1\n2::M::56::16::1\n", kMovies, log), std::exception);
  EXPECT_THROW(load("1::F::1::21::1\n2::M::56::16::1\n", kMovies, log), std::exception);
}

TEST(FeatureBlocks, Parse) {
  EXPECT_FALSE(FeatureBlocks::parse("none").any());
  EXPECT_EQ(FeatureBlocks::parse("all"), (FeatureBlocks{true, true, true}));
  auto b = FeatureBlocks::parse("item, interaction");
  EXPECT_EQ(b, (FeatureBlocks{false, true, true}));
  EXPECT_EQ(b.to_string(), "item,interaction");
  EXPECT_EQ(FeatureBlocks{}.to_string(), "none");
  EXPECT_EQ(FeatureBlocks::parse(FeatureBlocks{true, false, true}.to_string()),
            (FeatureBlocks{true, false, true}));
  EXPECT_THROW(FeatureBlocks::parse("genre"), std::invalid_argument);
}

}  // namespace
}  // namespace seqrec
