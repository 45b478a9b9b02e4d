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

#include "seqrec/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>

#include "seqrec/errors.hpp"
#include "seqrec/util.hpp"

namespace seqrec {

namespace {

std::size_t intersection_size(std::span<const ItemId> recs, std::span<const ItemId> future) {
  std::size_t n = 0;
  for (ItemId r : recs)
    if (std::find(future.begin(), future.end(), r) != future.end()) ++n;
  return n;
}

}  // namespace

int sps_at_k(std::span<const ItemId> recs, ItemId next_item) {
  return std::find(recs.begin(), recs.end(), next_item) != recs.end() ? 1 : 0;
}

double recall_at_k(std::span<const ItemId> recs, std::span<const ItemId> future) {
  if (future.empty()) throw DataError("recall_at_k: empty future set");
  return static_cast<double>(intersection_size(recs, future)) /
         static_cast<double>(future.size());
}

double precision_at_k(std::span<const ItemId> recs, std::span<const ItemId> future) {
  if (recs.empty()) throw DataError("precision_at_k: empty recommendation list");
  return static_cast<double>(intersection_size(recs, future)) / static_cast<double>(recs.size());
}

UserMetrics score_user(UserId user, std::span<const ItemId> recs,
                       std::span<const ItemId> future) {
  if (future.empty()) throw DataError("score_user: empty future for user " + std::to_string(user));
  UserMetrics m;
  m.user = user;
  m.sps = sps_at_k(recs, future.front());
  for (ItemId r : recs)
    if (std::find(future.begin(), future.end(), r) != future.end()) m.correct.push_back(r);
  std::sort(m.correct.begin(), m.correct.end());
  m.hits = static_cast<int>(m.correct.size());
  m.recall = recall_at_k(recs, future);
  m.precision = recs.empty() ? 0.0 : precision_at_k(recs, future);
  return m;
}

EvaluationReport aggregate(std::vector<UserMetrics> rows, std::size_t k, ReportMetadata metadata) {
  if (rows.empty()) throw DataError("aggregate: no evaluated users");
  EvaluationReport report;
  report.k = k;
  report.metadata = std::move(metadata);
  double sps = 0, recall = 0, precision = 0;
  std::size_t covered = 0;
  std::set<ItemId> correct;
  for (const auto& r : rows) {
    sps += r.sps;
    recall += r.recall;
    precision += r.precision;
    if (r.hits >= 1) ++covered;
    correct.insert(r.correct.begin(), r.correct.end());
  }
  const double n = static_cast<double>(rows.size());
  report.sps = 100.0 * sps / n;
  report.recall = 100.0 * recall / n;
  report.precision = 100.0 * precision / n;
  report.user_coverage = 100.0 * static_cast<double>(covered) / n;
  report.item_coverage = correct.size();
  report.per_user = std::move(rows);
  return report;
}

void write_per_user_csv(const EvaluationReport& report, const InteractionLog& log,
                        std::ostream& out) {
  out << "user_id,sps,recall,precision,hits\n";
  for (const auto& r : report.per_user)
    out << log.original_user_id(r.user) << "," << r.sps << "," << format_fixed(r.recall, 6) << ","
        << format_fixed(r.precision, 6) << "," << r.hits << "\n";
}

void write_aggregate_header(std::ostream& out) {
  out << "method,k,sps,recall,precision,user_coverage,item_coverage,seed\n";
}

void write_aggregate_row(const EvaluationReport& report, std::ostream& out) {
  out << report.metadata.method << "," << report.k << "," << format_fixed(report.sps, 4) << ","
      << format_fixed(report.recall, 4) << "," << format_fixed(report.precision, 4) << ","
      << format_fixed(report.user_coverage, 4) << "," << report.item_coverage << ","
      << report.metadata.seed << "\n";
}

void write_report(const EvaluationReport& report, const InteractionLog& log,
                  const std::string& per_user_path, const std::string& aggregate_path) {
  std::ofstream per_user(per_user_path);
  if (!per_user) throw DataError("cannot write " + per_user_path);
  write_per_user_csv(report, log, per_user);
  std::ofstream agg(aggregate_path);
  if (!agg) throw DataError("cannot write " + aggregate_path);
  write_aggregate_header(agg);
  write_aggregate_row(report, agg);
}

}  // namespace seqrec
