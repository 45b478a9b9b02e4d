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

#include "seqrec/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "seqrec/errors.hpp"
#include "seqrec/util.hpp"

namespace seqrec {

namespace {

template <typename T>
bool parse_int(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::vector<ItemId> UserSequence::items() const {
  std::vector<ItemId> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(e.item);
  return out;
}

InteractionLog InteractionLog::from_raw(std::span<const RawInteraction> raw) {
  InteractionLog log;
  std::set<std::int64_t> users, items, ratings;
  for (const auto& r : raw) {
    users.insert(r.user);
    items.insert(r.item);
    ratings.insert(r.rating);
  }
  log.user_ids_.assign(users.begin(), users.end());
  log.item_ids_.assign(items.begin(), items.end());
  for (auto r : ratings) log.rating_values_.push_back(static_cast<int>(r));
  for (std::size_t i = 0; i < log.user_ids_.size(); ++i)
    log.user_index_.emplace(log.user_ids_[i], static_cast<UserId>(i));
  for (std::size_t i = 0; i < log.item_ids_.size(); ++i)
    log.item_index_.emplace(log.item_ids_[i], static_cast<ItemId>(i));

  log.sequences_.resize(log.user_ids_.size());
  for (std::size_t u = 0; u < log.sequences_.size(); ++u)
    log.sequences_[u].user = static_cast<UserId>(u);
  for (const auto& r : raw) {
    Interaction e{log.user_index_.at(r.user), log.item_index_.at(r.item), r.rating,
                  r.timestamp};
    log.sequences_[e.user].events.push_back(e);
  }
  for (auto& seq : log.sequences_) {
    auto& ev = seq.events;
    std::stable_sort(ev.begin(), ev.end(), [](const Interaction& a, const Interaction& b) {
      if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
      return a.item < b.item;
    });
    std::vector<char> seen(log.item_ids_.size(), 0);
    std::size_t kept = 0;
    for (const auto& e : ev) {
      if (seen[e.item]) {
        ++log.dropped_duplicates_;
        continue;
      }
      seen[e.item] = 1;
      ev[kept++] = e;
    }
    ev.resize(kept);
    log.num_interactions_ += kept;
  }
  return log;
}

UserId InteractionLog::find_user(std::int64_t original) const {
  auto it = user_index_.find(original);
  return it == user_index_.end() ? -1 : it->second;
}

ItemId InteractionLog::find_item(std::int64_t original) const {
  auto it = item_index_.find(original);
  return it == item_index_.end() ? -1 : it->second;
}

std::uint64_t InteractionLog::catalog_digest() const {
  Fnv1a h;
  for (auto id : item_ids_) h.update_value(id);
  return h.digest();
}

RatingFormat parse_rating_format(const std::string& name) {
  if (name == "movielens-1m" || name == "ml1m") return RatingFormat::kMovielens1M;
  if (name == "generic-csv" || name == "csv") return RatingFormat::kGenericCsv;
  throw std::invalid_argument("unknown rating format '" + name +
                              "' (expected movielens-1m or generic-csv)");
}

std::vector<RawInteraction> parse_ratings(std::istream& in, RatingFormat format,
                                          const std::string& source_name) {
  std::vector<RawInteraction> out;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  const std::string_view delim = format == RatingFormat::kMovielens1M ? "::" : ",";
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (format == RatingFormat::kGenericCsv && !header_seen) {
      if (view != "user,item,rating,timestamp")
        throw ParseError(source_name, lineno,
                         "expected header 'user,item,rating,timestamp'");
      header_seen = true;
      continue;
    }
    auto fields = split(view, delim);
    if (fields.size() != 4)
      throw ParseError(source_name, lineno,
                       "expected 4 fields, got " + std::to_string(fields.size()));
    RawInteraction r;
    if (!parse_int(fields[0], r.user)) throw ParseError(source_name, lineno, "bad user id");
    if (!parse_int(fields[1], r.item)) throw ParseError(source_name, lineno, "bad item id");
    if (!parse_int(fields[2], r.rating)) throw ParseError(source_name, lineno, "bad rating");
    if (!parse_int(fields[3], r.timestamp))
      throw ParseError(source_name, lineno, "bad timestamp");
    if (r.timestamp < 0) throw ParseError(source_name, lineno, "negative timestamp");
    out.push_back(r);
  }
  return out;
}

InteractionLog load_ratings(const std::filesystem::path& path, RatingFormat format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open ratings file " + path.string());
  auto raw = parse_ratings(in, format, path.string());
  if (raw.empty()) throw DataError("empty corpus: " + path.string());
  auto log = InteractionLog::from_raw(raw);
  if (log.dropped_duplicates() > 0)
    std::cerr << "warning: " << path.string() << ": dropped " << log.dropped_duplicates()
              << " repeated (user, item) events\n";
  return log;
}

DatasetSplit split_users(const InteractionLog& log, std::size_t n_test,
                         std::size_t n_validation, std::uint64_t seed) {
  const std::size_t n_users = log.num_users();
  if (n_test + n_validation > 0 && n_test + n_validation >= n_users)
    throw DataError("split: n_test + n_validation = " + std::to_string(n_test + n_validation) +
                    " must be below the user count " + std::to_string(n_users));

  std::vector<UserId> eligible;
  std::size_t short_users = 0;
  for (const auto& seq : log.sequences()) {
    if (seq.size() >= 2)
      eligible.push_back(seq.user);
    else
      ++short_users;
  }
  if (n_test + n_validation > eligible.size())
    throw DataError("split: only " + std::to_string(eligible.size()) +
                    " users have at least 2 events");
  if (short_users > 0 && n_test + n_validation > 0)
    std::cerr << "warning: " << short_users
              << " users with fewer than 2 events kept out of test/validation\n";

  Rng rng(seed);
  rng.shuffle(eligible);
  std::vector<char> role(n_users, 0);  // 0 train, 1 validation, 2 test
  for (std::size_t i = 0; i < n_test; ++i) role[eligible[i]] = 2;
  for (std::size_t i = n_test; i < n_test + n_validation; ++i) role[eligible[i]] = 1;

  DatasetSplit split;
  split.seed = seed;
  for (const auto& seq : log.sequences()) {
    switch (role[seq.user]) {
      case 0: split.train.push_back(seq); break;
      case 1: split.validation.push_back(seq); break;
      default: split.test.push_back(seq); break;
    }
  }
  return split;
}

void save_split_manifest(const DatasetSplit& split, const InteractionLog& log,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write split manifest " + path.string());
  out << "# seed=" << split.seed << "\n";
  out << "role,original_user_id\n";
  auto emit = [&](const char* role, const std::vector<UserSequence>& group) {
    for (const auto& seq : group) out << role << "," << log.original_user_id(seq.user) << "\n";
  };
  emit("train", split.train);
  emit("validation", split.validation);
  emit("test", split.test);
}

DatasetSplit load_split_manifest(const InteractionLog& log,
                                 const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open split manifest " + path.string());
  DatasetSplit result;
  std::vector<int> role(log.num_users(), -1);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.starts_with("# seed=")) {
      if (!parse_int(view.substr(7), result.seed))
        throw ParseError(path.string(), lineno, "bad seed");
      continue;
    }
    if (view.starts_with("#") || view == "role,original_user_id") continue;
    auto fields = split(view, ",");
    std::int64_t original = 0;
    if (fields.size() != 2 || !parse_int(fields[1], original))
      throw ParseError(path.string(), lineno, "expected role,original_user_id");
    int r;
    if (fields[0] == "train")
      r = 0;
    else if (fields[0] == "validation")
      r = 1;
    else if (fields[0] == "test")
      r = 2;
    else
      throw ParseError(path.string(), lineno, "unknown role '" + std::string(fields[0]) + "'");
    UserId u = log.find_user(original);
    if (u < 0)
      throw ParseError(path.string(), lineno, "user " + std::to_string(original) + " not in log");
    if (role[u] >= 0)
      throw ParseError(path.string(), lineno, "user " + std::to_string(original) + " listed twice");
    role[u] = r;
  }
  for (const auto& seq : log.sequences()) {
    switch (role[seq.user]) {
      case -1:
        throw DataError("split manifest " + path.string() + " omits user " +
                        std::to_string(log.original_user_id(seq.user)));
      case 0: result.train.push_back(seq); break;
      case 1: result.validation.push_back(seq); break;
      default: result.test.push_back(seq); break;
    }
  }
  return result;
}

std::pair<UserSequence, UserSequence> half_split(const UserSequence& seq) {
  if (seq.size() < 2)
    throw DataError("half_split: user " + std::to_string(seq.user) + " has " +
                    std::to_string(seq.size()) + " events, need at least 2");
  const std::size_t cut = seq.size() / 2;
  UserSequence history{seq.user, {seq.events.begin(), seq.events.begin() + cut}};
  UserSequence future{seq.user, {seq.events.begin() + cut, seq.events.end()}};
  return {std::move(history), std::move(future)};
}

}  // namespace seqrec
