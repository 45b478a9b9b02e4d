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

#include "seqrec/popularity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "seqrec/errors.hpp"

namespace seqrec {

std::array<int, PopularityTable::kBins + 1> popularity_bin_sizes(std::size_t n) {
  constexpr int kBins = PopularityTable::kBins;
  std::array<int, kBins + 1> size{};
  const double units = static_cast<double>((1 << kBins) - 1);  // 1 + 2 + ... + 512
  int assigned = 0;
  for (int p = kBins; p >= 2; --p) {
    const double target = static_cast<double>(n) * static_cast<double>(1 << (kBins - p)) / units;
    size[p] = static_cast<int>(std::lround(target));
    assigned += size[p];
  }
  // Small catalogs round the top bin to zero; the most popular item still
  // gets p = 10.
  if (n > 0 && size[kBins] == 0) {
    size[kBins] = 1;
    ++assigned;
  }
  // Rounding keeps p = 10..2 monotone; if it leaves the largest bin smaller
  // than the next one, shave the largest shrinkable bin until it does not.
  auto remainder = [&] { return static_cast<int>(n) - assigned; };
  while (remainder() < size[2]) {
    int p = 2;
    while (p < kBins && size[p] == size[p + 1]) ++p;
    --size[p];
    --assigned;
  }
  size[1] = static_cast<int>(n) - assigned;
  return size;
}

PopularityTable build_popularity(std::span<const UserSequence> train, std::size_t num_items) {
  if (train.empty()) throw DataError("build_popularity: empty training set");
  PopularityTable table;
  table.count.assign(num_items, 0);
  for (const auto& seq : train)
    for (const auto& e : seq.events) ++table.count.at(e.item);

  table.ranking.resize(num_items);
  std::iota(table.ranking.begin(), table.ranking.end(), 0);
  std::stable_sort(table.ranking.begin(), table.ranking.end(),
                   [&](ItemId a, ItemId b) { return table.count[a] > table.count[b]; });
  table.rank_of.assign(num_items, 0);
  for (std::size_t r = 0; r < num_items; ++r) table.rank_of[table.ranking[r]] = static_cast<int>(r);

  table.bin_size = popularity_bin_sizes(num_items);
  table.bin_of.assign(num_items, 1);
  std::size_t pos = 0;
  for (int p = PopularityTable::kBins; p >= 1; --p)
    for (int j = 0; j < table.bin_size[p]; ++j) table.bin_of[table.ranking[pos++]] = p;
  return table;
}

void save_popularity_csv(const PopularityTable& table, const InteractionLog& log,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "item,original_item_id,count,rank,bin\n";
  for (std::size_t r = 0; r < table.ranking.size(); ++r) {
    ItemId i = table.ranking[r];
    out << i << "," << log.original_item_id(i) << "," << table.count[i] << "," << r << ","
        << table.bin_of[i] << "\n";
  }
}

}  // namespace seqrec
