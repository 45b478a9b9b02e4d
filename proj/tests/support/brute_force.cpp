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

#include "support/brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "seqrec/baselines.hpp"
#include "seqrec/popularity.hpp"
#include "seqrec/util.hpp"

namespace seqrec::testing {

namespace {

bool contains(const std::vector<ItemId>& v, ItemId x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

void backfill(std::vector<ItemId>& recs, std::size_t k, const ItemSet& exclude,
              const std::vector<ItemId>& ranking) {
  for (ItemId item : ranking) {
    if (recs.size() >= k) break;
    if (!exclude.contains(item) && !contains(recs, item)) recs.push_back(item);
  }
}

std::string join(const std::vector<ItemId>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  return out.str();
}

}  // namespace

std::vector<ItemId> brute_popularity_ranking(const std::vector<UserSequence>& train,
                                             std::size_t num_items) {
  std::vector<int> count(num_items, 0);
  for (ItemId j = 0; j < static_cast<ItemId>(num_items); ++j)
    for (const auto& seq : train)
      for (const auto& e : seq.events)
        if (e.item == j) ++count[j];
  std::vector<ItemId> ranking(num_items);
  std::iota(ranking.begin(), ranking.end(), 0);
  std::sort(ranking.begin(), ranking.end(), [&](ItemId a, ItemId b) {
    return count[a] != count[b] ? count[a] > count[b] : a < b;
  });
  return ranking;
}

std::vector<ItemId> brute_markov_recommend(const std::vector<UserSequence>& train,
                                           std::size_t num_items, const UserSequence& history,
                                           std::size_t k, const ItemSet& exclude) {
  const ItemId last = history.events.back().item;
  std::vector<int> count(num_items, 0);
  for (ItemId m = 0; m < static_cast<ItemId>(num_items); ++m)
    for (const auto& seq : train)
      for (std::size_t t = 0; t + 1 < seq.size(); ++t)
        if (seq.events[t].item == last && seq.events[t + 1].item == m) ++count[m];
  std::vector<ItemId> order(num_items);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
    return count[a] != count[b] ? count[a] > count[b] : a < b;
  });
  std::vector<ItemId> recs;
  for (ItemId m : order)
    if (recs.size() < k && count[m] > 0 && !exclude.contains(m)) recs.push_back(m);
  backfill(recs, k, exclude, brute_popularity_ranking(train, num_items));
  return recs;
}

std::vector<double> brute_knn_scores(const std::vector<UserSequence>& train, std::size_t num_items,
                                     std::size_t k_neighbors, const UserSequence& history) {
  const auto own = history.items();
  std::vector<double> sim(train.size());
  for (std::size_t u = 0; u < train.size(); ++u) {
    const auto other = train[u].items();
    std::size_t common = 0;
    for (ItemId a : own)
      if (contains(other, a)) ++common;
    sim[u] = static_cast<double>(common) /
             std::sqrt(static_cast<double>(own.size()) * static_cast<double>(other.size()));
  }
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sim[a] != sim[b] ? sim[a] > sim[b] : a < b;
  });
  std::vector<bool> chosen(train.size(), false);
  for (std::size_t i = 0; i < std::min(k_neighbors, order.size()); ++i) chosen[order[i]] = true;
  std::vector<double> scores(num_items, 0.0);
  for (ItemId j = 0; j < static_cast<ItemId>(num_items); ++j)
    for (std::size_t u = 0; u < train.size(); ++u)
      if (chosen[u] && contains(train[u].items(), j)) scores[j] += sim[u];
  return scores;
}

std::vector<ItemId> brute_knn_recommend(const std::vector<UserSequence>& train,
                                        std::size_t num_items, std::size_t k_neighbors,
                                        const UserSequence& history, std::size_t k,
                                        const ItemSet& exclude) {
  const auto scores = brute_knn_scores(train, num_items, k_neighbors, history);
  std::vector<ItemId> order(num_items);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
    return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
  });
  std::vector<ItemId> recs;
  for (ItemId j : order)
    if (recs.size() < k && scores[j] > 0.0 && !exclude.contains(j)) recs.push_back(j);
  backfill(recs, k, exclude, brute_popularity_ranking(train, num_items));
  return recs;
}

EquivalenceResult check_baseline_equivalence(int instances, std::uint64_t seed) {
  EquivalenceResult result;
  Rng rng(seed);
  auto fail = [&](int instance, const std::string& what) {
    if (result.mismatches++ == 0)
      result.first_mismatch = "instance " + std::to_string(instance) + ": " + what;
  };
  for (int instance = 0; instance < instances; ++instance) {
    ++result.instances;
    const int n_users = 1 + static_cast<int>(rng.below(10));
    const int n_items = 2 + static_cast<int>(rng.below(9));
    std::vector<RawInteraction> raw;
    for (int u = 0; u < n_users; ++u) {
      std::vector<int> items(n_items);
      std::iota(items.begin(), items.end(), 0);
      rng.shuffle(items);
      const int len = 1 + static_cast<int>(rng.below(n_items));
      for (int t = 0; t < len; ++t)
        raw.push_back({u, items[t], 1, static_cast<std::int64_t>(rng.below(5))});
    }
    // Make sure every item id is present so the catalog has n_items entries.
    for (int i = 0; i < n_items; ++i) raw.push_back({n_users, i, 1, i});
    const auto log = InteractionLog::from_raw(raw);
    const std::vector<UserSequence> train = log.sequences();
    const std::size_t catalog = log.num_items();
    const auto popularity = build_popularity(train, catalog);

    if (popularity.ranking != brute_popularity_ranking(train, catalog))
      fail(instance, "popularity ranking differs");

    MarkovChain markov(train, popularity);
    UserKnn knn(train, catalog, 1, popularity);
    for (int q = 0; q < 5; ++q) {
      UserSequence history{0, {}};
      std::vector<int> items(catalog);
      std::iota(items.begin(), items.end(), 0);
      rng.shuffle(items);
      const int len = 1 + static_cast<int>(rng.below(catalog));
      for (int t = 0; t < len; ++t) history.events.push_back({0, items[t], 1, t});
      ItemSet exclude;
      if (rng.below(2) == 1)
        for (const auto& e : history.events) exclude.insert(e.item);
      const std::size_t k = 1 + rng.below(catalog);
      const std::size_t neighbors = 1 + rng.below(train.size());
      knn.set_k_neighbors(neighbors);

      const auto m = markov.recommend(history, k, exclude);
      const auto mb = brute_markov_recommend(train, catalog, history, k, exclude);
      if (m != mb) fail(instance, "markov [" + join(m) + "] vs brute force [" + join(mb) + "]");

      const auto s = knn.scores(history);
      const auto sb = brute_knn_scores(train, catalog, neighbors, history);
      if (s != sb) fail(instance, "knn scores differ (k_neighbors=" + std::to_string(neighbors) + ")");
      const auto r = knn.recommend(history, k, exclude);
      const auto rb = brute_knn_recommend(train, catalog, neighbors, history, k, exclude);
      if (r != rb) fail(instance, "knn [" + join(r) + "] vs brute force [" + join(rb) + "]");
    }
  }
  return result;
}

}  // namespace seqrec::testing
