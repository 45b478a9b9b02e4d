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

#ifndef SEQREC_MODEL_IO_HPP_
#define SEQREC_MODEL_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqrec/features.hpp"
#include "seqrec/network.hpp"
#include "seqrec/optimizer.hpp"

namespace seqrec {

struct OptimizerSnapshot {
  OptimizerSettings settings;
  std::vector<std::vector<double>> accumulators;
  std::uint64_t steps = 0;
};

// Model container:
//   "SEQRECNN" | u32 version | u64 n | n bytes of "key=value\n" header |
//   u32 tensor count | per tensor: u32 name length, name, u64 rows, u64 cols,
//   rows*cols little-endian IEEE-754 doubles in column-major order.
// Optimizer accumulators are stored as tensors named "optimizer/<block>".
struct ModelFile {
  NetworkConfig config;
  NetworkParameters params;
  FeatureBlocks features;
  std::uint64_t catalog_digest = 0;
  std::optional<OptimizerSnapshot> optimizer;
  std::map<std::string, std::string> metadata;
};

inline constexpr std::uint32_t kModelFormatVersion = 1;

void write_model(const ModelFile& model, std::ostream& out);
ModelFile read_model(std::istream& in);
void save_model(const ModelFile& model, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace seqrec

#endif  // SEQREC_MODEL_IO_HPP_
