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

#include "seqrec/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>

#include "seqrec/errors.hpp"
#include "seqrec/util.hpp"

namespace seqrec {

void backfill_by_popularity(std::vector<ItemId>& recs, std::size_t k, const ItemSet& exclude,
                            const PopularityTable& popularity) {
  if (recs.size() >= k) return;
  ItemSet taken(recs.begin(), recs.end());
  for (ItemId item : popularity.ranking) {
    if (recs.size() >= k) break;
    if (exclude.contains(item) || taken.contains(item)) continue;
    recs.push_back(item);
  }
}

std::vector<ItemId> PopularityRecommender::recommend(const UserSequence&, std::size_t k,
                                                     const ItemSet& exclude) const {
  std::vector<ItemId> recs;
  backfill_by_popularity(recs, k, exclude, popularity_);
  return recs;
}

// --- Markov chain -----------------------------------------------------------

MarkovChain::MarkovChain(std::span<const UserSequence> train, PopularityTable popularity)
    : successors_(popularity.num_items()), popularity_(std::move(popularity)) {
  if (train.empty()) throw DataError("markov: empty training set");
  std::vector<std::map<ItemId, int>> counts(successors_.size());
  for (const auto& seq : train)
    for (std::size_t t = 1; t < seq.events.size(); ++t)
      ++counts.at(seq.events[t - 1].item)[seq.events[t].item];
  for (std::size_t j = 0; j < counts.size(); ++j) {
    auto& out = successors_[j];
    for (auto [item, c] : counts[j]) out.push_back({item, c});
    std::stable_sort(out.begin(), out.end(),
                     [](const Successor& a, const Successor& b) { return a.count > b.count; });
  }
}

int MarkovChain::count(ItemId from, ItemId to) const {
  for (const auto& s : successors_.at(from))
    if (s.item == to) return s.count;
  return 0;
}

std::vector<ItemId> MarkovChain::recommend(const UserSequence& history, std::size_t k,
                                           const ItemSet& exclude) const {
  if (history.empty()) throw std::invalid_argument("markov: empty history");
  std::vector<ItemId> recs;
  const ItemId last = history.events.back().item;
  if (last >= 0 && static_cast<std::size_t>(last) < successors_.size()) {
    for (const auto& s : successors_[last]) {
      if (recs.size() >= k) break;
      if (!exclude.contains(s.item)) recs.push_back(s.item);
    }
  }
  backfill_by_popularity(recs, k, exclude, popularity_);
  return recs;
}

// --- user KNN ---------------------------------------------------------------

double cosine_similarity(std::span<const ItemId> a, std::span<const ItemId> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("cosine_similarity: empty set");
  std::vector<ItemId> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::vector<ItemId> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  return static_cast<double>(common.size()) /
         std::sqrt(static_cast<double>(sa.size()) * static_cast<double>(sb.size()));
}

UserKnn::UserKnn(std::span<const UserSequence> train, std::size_t num_items,
                 std::size_t k_neighbors, PopularityTable popularity)
    : users_of_(num_items), num_items_(num_items), popularity_(std::move(popularity)) {
  if (train.empty()) throw DataError("knn: empty training set");
  sets_.reserve(train.size());
  for (std::size_t u = 0; u < train.size(); ++u) {
    auto items = train[u].items();
    std::sort(items.begin(), items.end());
    for (ItemId i : items) users_of_.at(i).push_back(static_cast<std::uint32_t>(u));
    sets_.push_back(std::move(items));
  }
  set_k_neighbors(k_neighbors);
}

void UserKnn::set_k_neighbors(std::size_t k) {
  if (k == 0 || k > sets_.size())
    throw std::invalid_argument("knn: neighbourhood size " + std::to_string(k) +
                                " outside [1, " + std::to_string(sets_.size()) + "]");
  k_neighbors_ = k;
}

std::vector<double> UserKnn::similarities(const UserSequence& history) const {
  if (history.empty()) throw std::invalid_argument("knn: empty history");
  auto items = history.items();
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  std::vector<std::uint32_t> common(sets_.size(), 0);
  for (ItemId i : items)
    if (i >= 0 && static_cast<std::size_t>(i) < num_items_)
      for (auto u : users_of_[i]) ++common[u];
  std::vector<double> sim(sets_.size(), 0.0);
  const double own = static_cast<double>(items.size());
  for (std::size_t u = 0; u < sets_.size(); ++u)
    sim[u] = static_cast<double>(common[u]) /
             std::sqrt(own * static_cast<double>(sets_[u].size()));
  return sim;
}

std::vector<UserKnn::Neighbor> UserKnn::neighbors(const UserSequence& history) const {
  auto sim = similarities(history);
  std::vector<std::size_t> order(sim.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k_neighbors_),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      if (sim[a] != sim[b]) return sim[a] > sim[b];
                      return a < b;
                    });
  order.resize(k_neighbors_);
  std::sort(order.begin(), order.end());
  std::vector<Neighbor> out;
  out.reserve(order.size());
  for (auto u : order) out.push_back({u, sim[u]});
  return out;
}

std::vector<double> UserKnn::scores(const UserSequence& history) const {
  std::vector<double> s(num_items_, 0.0);
  for (const auto& n : neighbors(history))
    for (ItemId j : sets_[n.train_index]) s[j] += n.similarity;
  return s;
}

std::vector<ItemId> UserKnn::recommend(const UserSequence& history, std::size_t k,
                                       const ItemSet& exclude) const {
  auto s = scores(history);
  std::vector<ItemId> candidates;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s[j] > 0.0 && !exclude.contains(static_cast<ItemId>(j)))
      candidates.push_back(static_cast<ItemId>(j));
  const std::size_t take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                    candidates.end(), [&](ItemId a, ItemId b) {
                      if (s[a] != s[b]) return s[a] > s[b];
                      return a < b;
                    });
  candidates.resize(take);
  backfill_by_popularity(candidates, k, exclude, popularity_);
  return candidates;
}

// --- popularity-constrained oracle -----------------------------------------

std::vector<OracleRow> oracle_curve(std::span<const UserSequence> users,
                                    const PopularityTable& popularity,
                                    std::span<const std::size_t> cutoffs, std::size_t k) {
  const std::size_t n_items = popularity.num_items();
  for (auto t : cutoffs)
    if (t < 1 || t > n_items)
      throw std::invalid_argument("oracle: cutoff " + std::to_string(t) + " outside [1, " +
                                  std::to_string(n_items) + "]");
  if (k == 0) throw std::invalid_argument("oracle: k must be positive");

  // Increments indexed by t: an item of rank r becomes admissible at t = r + 1.
  std::vector<double> d_sps(n_items + 2, 0.0), d_hits(n_items + 2, 0.0),
      d_recall(n_items + 2, 0.0);
  std::size_t n_users = 0;
  for (const auto& seq : users) {
    if (seq.size() < 2) continue;
    ++n_users;
    auto [history, future] = half_split(seq);
    std::vector<int> ranks;
    ranks.reserve(future.size());
    for (const auto& e : future.events) ranks.push_back(popularity.rank_of.at(e.item));
    d_sps[static_cast<std::size_t>(ranks.front()) + 1] += 1.0;
    std::sort(ranks.begin(), ranks.end());
    const double inv_future = 1.0 / static_cast<double>(future.size());
    for (std::size_t j = 0; j < std::min(k, ranks.size()); ++j) {
      d_hits[static_cast<std::size_t>(ranks[j]) + 1] += 1.0;
      d_recall[static_cast<std::size_t>(ranks[j]) + 1] += inv_future;
    }
  }
  if (n_users == 0) throw DataError("oracle: no user with at least 2 events");

  std::vector<double> sps(n_items + 1, 0.0), hits(n_items + 1, 0.0), recall(n_items + 1, 0.0);
  for (std::size_t t = 1; t <= n_items; ++t) {
    sps[t] = sps[t - 1] + d_sps[t];
    hits[t] = hits[t - 1] + d_hits[t];
    recall[t] = recall[t - 1] + d_recall[t];
  }
  const double n = static_cast<double>(n_users);
  const double max_recall = recall[n_items] / n;
  std::vector<OracleRow> rows;
  rows.reserve(cutoffs.size());
  for (auto t : cutoffs) {
    OracleRow row;
    row.t = t;
    row.sps = sps[t] / n;
    row.precision = hits[t] / (static_cast<double>(k) * n);
    row.recall = recall[t] / n;
    row.recall_normalized = max_recall > 0 ? row.recall / max_recall : 0.0;
    rows.push_back(row);
  }
  return rows;
}

void write_oracle_csv(std::span<const OracleRow> rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "t,sps,prec,rec_normalized\n";
  for (const auto& r : rows)
    out << r.t << "," << format_fixed(r.sps, 6) << "," << format_fixed(r.precision, 6) << ","
        << format_fixed(r.recall_normalized, 6) << "\n";
}

}  // namespace seqrec
