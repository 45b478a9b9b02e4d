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

#ifndef SEQREC_TESTS_SUPPORT_METRIC_CASES_HPP_
#define SEQREC_TESTS_SUPPORT_METRIC_CASES_HPP_

#include <functional>
#include <string>
#include <vector>

namespace seqrec::testing {

// Hand-worked metric examples, shared by the unit tests and the acceptance run.
struct MetricCase {
  std::string name;
  std::function<bool()> check;
};

std::vector<MetricCase> metric_hand_cases();

}  // namespace seqrec::testing

#endif  // SEQREC_TESTS_SUPPORT_METRIC_CASES_HPP_
