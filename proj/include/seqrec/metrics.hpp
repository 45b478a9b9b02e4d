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

#ifndef SEQREC_METRICS_HPP_
#define SEQREC_METRICS_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "seqrec/dataset.hpp"

namespace seqrec {

struct RecommendationList {
  UserId user = 0;
  std::vector<ItemId> items;
};

// Set-based metrics at a fixed cutoff. Order inside recs is irrelevant.
int sps_at_k(std::span<const ItemId> recs, ItemId next_item);
double recall_at_k(std::span<const ItemId> recs, std::span<const ItemId> future);
double precision_at_k(std::span<const ItemId> recs, std::span<const ItemId> future);

struct UserMetrics {
  UserId user = 0;
  int sps = 0;
  double recall = 0.0;
  double precision = 0.0;
  int hits = 0;
  std::vector<ItemId> correct;  // recs ∩ future, sorted
};

// Scores one user's list against the second half of the history: next item =
// future.front(), long-term targets = all of future.
UserMetrics score_user(UserId user, std::span<const ItemId> recs,
                       std::span<const ItemId> future);

struct ReportMetadata {
  std::string method;
  std::uint64_t seed = 0;
  std::string config_digest;
};

struct EvaluationReport {
  std::size_t k = 10;
  std::vector<UserMetrics> per_user;
  // Aggregates; percentages in [0, 100].
  double sps = 0.0;
  double recall = 0.0;
  double precision = 0.0;
  double user_coverage = 0.0;
  std::size_t item_coverage = 0;
  ReportMetadata metadata;
};

EvaluationReport aggregate(std::vector<UserMetrics> rows, std::size_t k,
                           ReportMetadata metadata = {});

// per-user CSV `user_id,sps,recall,precision,hits` (original user ids).
void write_per_user_csv(const EvaluationReport& report, const InteractionLog& log,
                        std::ostream& out);
// aggregate CSV `method,k,sps,recall,precision,user_coverage,item_coverage,seed`.
void write_aggregate_header(std::ostream& out);
void write_aggregate_row(const EvaluationReport& report, std::ostream& out);
void write_report(const EvaluationReport& report, const InteractionLog& log,
                  const std::string& per_user_path, const std::string& aggregate_path);

}  // namespace seqrec

#endif  // SEQREC_METRICS_HPP_
