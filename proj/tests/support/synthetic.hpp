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

#ifndef SEQREC_TESTS_SUPPORT_SYNTHETIC_HPP_
#define SEQREC_TESTS_SUPPORT_SYNTHETIC_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "seqrec/dataset.hpp"

namespace seqrec::testing {

// A Movielens-shaped corpus with sequential structure: after item i, a user
// picks one of i's few "successors" with probability `follow`, otherwise an
// item drawn with a Zipf-like popularity skew.
struct SyntheticOptions {
  int users = 200;
  int items = 60;
  int min_length = 4;
  int max_length = 40;
  double follow = 0.7;
  std::uint64_t seed = 1;
};

std::vector<RawInteraction> synthetic_ratings(const SyntheticOptions& options);

// Writes ratings.dat, users.dat and movies.dat in the Movielens 1M format.
void write_synthetic_ml1m(const SyntheticOptions& options, const std::filesystem::path& dir);

}  // namespace seqrec::testing

#endif  // SEQREC_TESTS_SUPPORT_SYNTHETIC_HPP_
