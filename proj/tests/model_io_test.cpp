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

#include "seqrec/model_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "seqrec/errors.hpp"
#include "seqrec/util.hpp"

namespace seqrec {
namespace {

ModelFile sample(bool bidirectional, bool with_optimizer) {
  ModelFile m;
  m.config.cell = bidirectional ? CellKind::kGru : CellKind::kLstm;
  m.config.hidden_size = 3;
  m.config.layers = bidirectional ? 1 : 2;
  m.config.bidirectional = bidirectional;
  m.config.input_size = 9;
  m.config.output_size = 6;
  m.config.init_seed = 77;
  m.params = NetworkParameters::initialize(m.config);
  Rng rng(5);
  for (auto b : m.params.blocks())
    for (double& v : b) v += rng.uniform(-1e-3, 1e-3) / 3.0;
  m.features = {true, false, true};
  m.catalog_digest = 0xfeedface12345678ULL;
  if (with_optimizer) {
    OptimizerSnapshot o;
    o.settings.kind = OptimizerKind::kMomentum;
    o.settings.learning_rate = 0.1 / 3.0;
    o.settings.momentum = 0.85;
    o.steps = 42;
    for (auto b : m.params.blocks()) {
      std::vector<double> acc(b.size());
      for (double& v : acc) v = rng.uniform();
      o.accumulators.push_back(acc);
    }
    m.optimizer = o;
  }
  m.metadata["config_digest"] = "abc123";
  return m;
}

void expect_same(const ModelFile& a, const ModelFile& b) {
  EXPECT_EQ(a.config, b.config);
  EXPECT_EQ(a.features, b.features);
  EXPECT_EQ(a.catalog_digest, b.catalog_digest);
  EXPECT_EQ(a.metadata, b.metadata);
  auto ba = a.params.blocks();
  auto bb = b.params.blocks();
  ASSERT_EQ(ba.size(), bb.size());
  for (std::size_t i = 0; i < ba.size(); ++i)
    EXPECT_TRUE(std::equal(ba[i].begin(), ba[i].end(), bb[i].begin(), bb[i].end()));
  ASSERT_EQ(a.optimizer.has_value(), b.optimizer.has_value());
  if (a.optimizer) {
    EXPECT_EQ(a.optimizer->settings.kind, b.optimizer->settings.kind);
    EXPECT_EQ(a.optimizer->settings.learning_rate, b.optimizer->settings.learning_rate);
    EXPECT_EQ(a.optimizer->settings.momentum, b.optimizer->settings.momentum);
    EXPECT_EQ(a.optimizer->settings.epsilon, b.optimizer->settings.epsilon);
    EXPECT_EQ(a.optimizer->steps, b.optimizer->steps);
    EXPECT_EQ(a.optimizer->accumulators, b.optimizer->accumulators);
  }
}

TEST(ModelIo, RoundTripIsBitExact) {
  for (bool bi : {false, true})
    for (bool opt : {false, true}) {
      const auto m = sample(bi, opt);
      std::stringstream buf;
      write_model(m, buf);
      expect_same(m, read_model(buf));
    }
}

TEST(ModelIo, RewriteIsByteIdentical) {
  const auto m = sample(false, true);
  std::stringstream a, b;
  write_model(m, a);
  write_model(read_model(a), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(ModelIo, RejectsCorruptFiles) {
  std::stringstream junk("not a model");
  EXPECT_THROW(read_model(junk), ParseError);
  std::stringstream full;
  write_model(sample(false, false), full);
  const std::string bytes = full.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() - 9));
  EXPECT_THROW(read_model(truncated), ParseError);
  std::string wrong_version = bytes;
  wrong_version[8] = 9;
  std::stringstream v(wrong_version);
  EXPECT_THROW(read_model(v), ParseError);
}

TEST(ModelIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "seqrec_model_io_test.bin";
  const auto m = sample(true, true);
  save_model(m, path);
  expect_same(m, load_model(path));
  std::filesystem::remove(path);
  EXPECT_THROW(load_model(path), DataError);
}

}  // namespace
}  // namespace seqrec
