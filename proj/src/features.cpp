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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "seqrec/errors.hpp"
#include "seqrec/util.hpp"

namespace seqrec {

namespace {

bool parse_int(std::string_view s, std::int64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string join_ids(const std::vector<std::int64_t>& ids) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(ids.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ",";
    out += std::to_string(ids[i]);
  }
  if (ids.size() > shown) out += ",... (" + std::to_string(ids.size()) + " total)";
  return out;
}

// Release year from a trailing "(YYYY)"; -1 when absent.
int parse_year(std::string_view title) {
  title = trim(title);
  if (title.size() < 6 || title.back() != ')') return -1;
  std::string_view tail = title.substr(title.size() - 6);
  if (tail.front() != '(') return -1;
  std::int64_t year = 0;
  if (!parse_int(tail.substr(1, 4), year)) return -1;
  return static_cast<int>(year);
}

}  // namespace

std::string FeatureBlocks::to_string() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ",";
    out += name;
  };
  add(user, "user");
  add(item, "item");
  add(interaction, "interaction");
  return out.empty() ? "none" : out;
}

FeatureBlocks FeatureBlocks::parse(const std::string& s) {
  FeatureBlocks blocks;
  if (s.empty() || s == "none") return blocks;
  for (auto part : split(s, ",")) {
    part = trim(part);
    if (part == "user")
      blocks.user = true;
    else if (part == "item")
      blocks.item = true;
    else if (part == "interaction")
      blocks.interaction = true;
    else if (part == "all")
      blocks = {true, true, true};
    else
      throw std::invalid_argument("unknown feature block '" + std::string(part) +
                                  "' (expected user, item, interaction, all or none)");
  }
  return blocks;
}

const std::array<std::string, SideFeatures::kGenres>& SideFeatures::genre_names() {
  static const std::array<std::string, kGenres> names = {
      "Action",  "Adventure", "Animation", "Children's", "Comedy",   "Crime",
      "Documentary", "Drama", "Fantasy",   "Film-Noir",  "Horror",   "Musical",
      "Mystery", "Romance",   "Sci-Fi",    "Thriller",   "War",      "Western"};
  return names;
}

int SideFeatures::width(const FeatureBlocks& blocks) const {
  int w = 0;
  if (blocks.user) w += user_width();
  if (blocks.item) w += item_width();
  if (blocks.interaction) w += interaction_width();
  return w;
}

int SideFeatures::rating_index(int rating) const {
  auto it = std::lower_bound(rating_values_.begin(), rating_values_.end(), rating);
  if (it == rating_values_.end() || *it != rating)
    throw DataError("rating value " + std::to_string(rating) + " not in the corpus");
  return static_cast<int>(it - rating_values_.begin());
}

SideFeatures SideFeatures::ratings_only(const InteractionLog& log) {
  SideFeatures f;
  f.rating_values_ = log.rating_values();
  return f;
}

SideFeatures load_side_features(std::istream& users, std::istream& movies,
                                const InteractionLog& log) {
  SideFeatures f;
  f.rating_values_ = log.rating_values();
  f.has_users_ = true;
  f.has_items_ = true;

  std::vector<char> user_seen(log.num_users(), 0);
  f.user_active_.assign(log.num_users(), {0, 0, 0});
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(users, line)) {
    ++lineno;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    auto fields = split(view, "::");
    if (fields.size() != 5) throw ParseError("users.dat", lineno, "expected 5 fields");
    std::int64_t id = 0, age = 0, occupation = 0;
    if (!parse_int(fields[0], id)) throw ParseError("users.dat", lineno, "bad user id");
    if (!parse_int(fields[2], age)) throw ParseError("users.dat", lineno, "bad age code");
    if (!parse_int(fields[3], occupation))
      throw ParseError("users.dat", lineno, "bad occupation code");
    auto age_it = std::find(SideFeatures::kAgeCodes.begin(), SideFeatures::kAgeCodes.end(), age);
    if (age_it == SideFeatures::kAgeCodes.end())
      throw ParseError("users.dat", lineno, "unknown age code " + std::to_string(age));
    std::string_view sex = trim(fields[1]);
    if (sex != "M" && sex != "F")
      throw ParseError("users.dat", lineno, "sex must be M or F");
    if (occupation < 0 || occupation >= SideFeatures::kOccupations)
      throw ParseError("users.dat", lineno, "occupation out of range");
    UserId u = log.find_user(id);
    if (u < 0) continue;
    user_seen[u] = 1;
    const int age_pos = static_cast<int>(age_it - SideFeatures::kAgeCodes.begin());
    f.user_active_[u] = {age_pos, SideFeatures::kAgeRanges + (sex == "M" ? 0 : 1),
                         SideFeatures::kAgeRanges + SideFeatures::kSexes +
                             static_cast<int>(occupation)};
  }
  std::vector<std::int64_t> missing;
  for (std::size_t u = 0; u < user_seen.size(); ++u)
    if (!user_seen[u]) missing.push_back(log.original_user_id(static_cast<UserId>(u)));
  if (!missing.empty())
    throw DataError("users.dat lacks users present in the ratings: " + join_ids(missing));

  std::vector<int> years(log.num_items(), -1);
  std::vector<std::vector<int>> genres(log.num_items());
  const auto& names = SideFeatures::genre_names();
  lineno = 0;
  while (std::getline(movies, line)) {
    ++lineno;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    // Titles never contain "::", so the first and last separators delimit them.
    std::size_t first = view.find("::");
    std::size_t last = view.rfind("::");
    if (first == std::string_view::npos || first == last)
      throw ParseError("movies.dat", lineno, "expected MovieID::Title::Genres");
    std::int64_t id = 0;
    if (!parse_int(view.substr(0, first), id))
      throw ParseError("movies.dat", lineno, "bad movie id");
    std::string_view title = view.substr(first + 2, last - first - 2);
    std::string_view genre_field = view.substr(last + 2);
    ItemId item = log.find_item(id);
    if (item < 0) continue;
    int year = parse_year(title);
    if (year < 0)
      throw ParseError("movies.dat", lineno,
                       "cannot parse release year from title '" + std::string(title) + "'");
    years[item] = year;
    for (auto g : split(genre_field, "|")) {
      g = trim(g);
      auto it = std::find(names.begin(), names.end(), g);
      if (it == names.end())
        throw ParseError("movies.dat", lineno, "unknown genre '" + std::string(g) + "'");
      genres[item].push_back(static_cast<int>(it - names.begin()));
    }
    std::sort(genres[item].begin(), genres[item].end());
    genres[item].erase(std::unique(genres[item].begin(), genres[item].end()), genres[item].end());
  }
  missing.clear();
  for (std::size_t i = 0; i < years.size(); ++i)
    if (years[i] < 0) missing.push_back(log.original_item_id(static_cast<ItemId>(i)));
  if (!missing.empty())
    throw DataError("movies.dat lacks items present in the ratings: " + join_ids(missing));

  std::set<int> decades;
  f.item_decade_.resize(log.num_items());
  for (std::size_t i = 0; i < years.size(); ++i) {
    f.item_decade_[i] = years[i] / 10 * 10;
    decades.insert(f.item_decade_[i]);
  }
  f.decades_.assign(decades.begin(), decades.end());
  f.item_active_.resize(log.num_items());
  for (std::size_t i = 0; i < years.size(); ++i) {
    auto d = std::lower_bound(f.decades_.begin(), f.decades_.end(), f.item_decade_[i]);
    auto& active = f.item_active_[i];
    active.push_back(static_cast<int>(d - f.decades_.begin()));
    for (int g : genres[i]) active.push_back(static_cast<int>(f.decades_.size()) + g);
  }
  return f;
}

SideFeatures load_side_features(const std::filesystem::path& users_path,
                                const std::filesystem::path& movies_path,
                                const InteractionLog& log) {
  std::ifstream users(users_path);
  if (!users) throw DataError("cannot open " + users_path.string());
  std::ifstream movies(movies_path, std::ios::binary);
  if (!movies) throw DataError("cannot open " + movies_path.string());
  return load_side_features(users, movies, log);
}

}  // namespace seqrec
