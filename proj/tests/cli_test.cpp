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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "support/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "seqrec_cli_test";
    fs::remove_all(d);
    seqrec::testing::SyntheticOptions o;
    o.users = 150;
    o.items = 40;
    seqrec::testing::write_synthetic_ml1m(o, d / "data");
    return d;
  }();
  return dir;
}

struct Run {
  int status = -1;
  std::string err;
};

Run run(const std::string& args) {
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(SEQREC_CLI) + " " + args + " > /dev/null 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  Run r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(err);
  std::stringstream buf;
  buf << in.rdbuf();
  r.err = buf.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

std::string common(const std::string& out) {
  return "--data " + (work_dir() / "data").string() + " --n-test 30 --n-validation 30 --out " +
         (work_dir() / out).string();
}

TEST(Cli, PrepareWritesSplitAndPopularity) {
  auto r = run("prepare " + common("prepare"));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(fs::exists(work_dir() / "prepare" / "split.csv"));
  EXPECT_TRUE(fs::exists(work_dir() / "prepare" / "popularity.csv"));
  const auto manifest = slurp(work_dir() / "prepare" / "manifest.txt");
  EXPECT_NE(manifest.find("split_seed=1"), std::string::npos);
  EXPECT_NE(manifest.find("data.ratings.dat="), std::string::npos);
  EXPECT_NE(manifest.find("config_digest="), std::string::npos);
}

TEST(Cli, MarkovBaselineIsIdempotent) {
  ASSERT_EQ(run("baseline --method markov --seed 1 --k 10 " + common("mc1")).status, 0);
  ASSERT_EQ(run("baseline --method markov --seed 1 --k 10 " + common("mc2")).status, 0);
  const auto a = slurp(work_dir() / "mc1" / "aggregate.csv");
  EXPECT_EQ(a.rfind("method,k,sps,", 0), 0u);
  EXPECT_EQ(a, slurp(work_dir() / "mc2" / "aggregate.csv"));
  EXPECT_EQ(slurp(work_dir() / "mc1" / "per_user.csv"), slurp(work_dir() / "mc2" / "per_user.csv"));
  EXPECT_EQ(line_count(work_dir() / "mc1" / "per_user.csv"), 31u);
}

TEST(Cli, SplitManifestIsReusable) {
  ASSERT_EQ(run("prepare " + common("prep2")).status, 0);
  ASSERT_EQ(run("baseline --method markov " + common("mc_seeded")).status, 0);
  ASSERT_EQ(run("baseline --method markov --split " + (work_dir() / "prep2" / "split.csv").string() +
                " " + common("mc_manifest"))
                .status,
            0);
  EXPECT_EQ(slurp(work_dir() / "mc_seeded" / "per_user.csv"),
            slurp(work_dir() / "mc_manifest" / "per_user.csv"));
}

TEST(Cli, KnnTuning) {
  auto r = run("baseline --method knn --knn-grid 5,10,50 " + common("knn"));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(line_count(work_dir() / "knn" / "knn_tuning.csv"), 4u);
  EXPECT_EQ(run("baseline --method knn --neighbors 7 " + common("knn7")).status, 0);
}

TEST(Cli, OracleRowsMatchCutoffs) {
  ASSERT_EQ(run("oracle --cutoffs 1,5,10,20,40 " + common("oracle")).status, 0);
  const auto text = slurp(work_dir() / "oracle" / "oracle.csv");
  EXPECT_EQ(text.rfind("t,sps,prec,rec_normalized\n", 0), 0u);
  EXPECT_EQ(line_count(work_dir() / "oracle" / "oracle.csv"), 6u);
}

TEST(Cli, TrainThenEvaluate) {
  auto r = run("train --cell gru --hidden 8 --optimizer adagrad --lr 0.1 --loss xent --epochs 2 "
               "--validation-every 40 " + common("train"));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(fs::exists(work_dir() / "train" / "model.bin"));
  EXPECT_EQ(slurp(work_dir() / "train" / "training_log.csv").rfind("sequences,epoch,seconds,train_loss,val_sps\n", 0),
            0u);
  EXPECT_NE(slurp(work_dir() / "train" / "config.txt").find("cell=gru"), std::string::npos);
  r = run("evaluate --model " + (work_dir() / "train" / "model.bin").string() + " " + common("eval"));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(line_count(work_dir() / "eval" / "aggregate.csv"), 2u);
  r = run("evaluate --model " + (work_dir() / "train" / "model.bin").string() + " " + common("eval2"));
  EXPECT_EQ(slurp(work_dir() / "eval" / "aggregate.csv"), slurp(work_dir() / "eval2" / "aggregate.csv"));
}

TEST(Cli, TrainWithAllFeatures) {
  auto r = run("train --hidden 6 --epochs 1 --features all " + common("train_feat"));
  ASSERT_EQ(r.status, 0) << r.err;
  r = run("evaluate --model " + (work_dir() / "train_feat" / "model.bin").string() + " " +
          common("eval_feat"));
  ASSERT_EQ(r.status, 0) << r.err;
}

TEST(Cli, SweepWritesSummary) {
  auto r = run("sweep --hidden 6 --epochs 1 --loss diversity --vary delta=0,0.2 --vary cell=lstm,gru " +
               common("sweep"));
  ASSERT_EQ(r.status, 0) << r.err;
  const auto summary = slurp(work_dir() / "sweep" / "summary.csv");
  EXPECT_EQ(summary.rfind("run,delta,cell,input_size,best_val_sps,", 0), 0u);
  EXPECT_EQ(line_count(work_dir() / "sweep" / "summary.csv"), 5u);
  EXPECT_TRUE(fs::exists(work_dir() / "sweep" / "run3" / "training_log.csv"));
}

TEST(Cli, ConfigFileSuppliesFlags) {
  const fs::path cfg = work_dir() / "train.ini";
  std::ofstream(cfg) << "[baseline]\nmethod=pop\nk=5\n";
  auto r = run("--config " + cfg.string() + " baseline " + common("cfg"));
  ASSERT_EQ(r.status, 0) << r.err;
  const auto agg = slurp(work_dir() / "cfg" / "aggregate.csv");
  EXPECT_NE(agg.find("\npopularity,5,"), std::string::npos) << agg;
  // command line overrides the file
  r = run("--config " + cfg.string() + " baseline --method markov " + common("cfg2"));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(slurp(work_dir() / "cfg2" / "aggregate.csv").find("\nmarkov,5,"), std::string::npos);
}

TEST(Cli, ErrorsNameTheFlag) {
  auto r = run("train --bidirectional --layers 2 " + common("bad1"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("--bidirectional"), std::string::npos) << r.err;
  r = run("baseline --method markov --frobnicate " + common("bad2"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("frobnicate"), std::string::npos) << r.err;
  r = run("baseline --method markov --data /nonexistent/dir --out " + (work_dir() / "bad3").string());
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("--data"), std::string::npos) << r.err;
  r = run("baseline --method forest " + common("bad4"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("--method"), std::string::npos) << r.err;
  r = run("evaluate --model /nonexistent.bin " + common("bad5"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("--model"), std::string::npos) << r.err;
  r = run("train --epochs 0 " + common("bad6"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("--epochs"), std::string::npos) << r.err;
  r = run("oracle --cutoffs 1,100000 " + common("bad7"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("--cutoffs"), std::string::npos) << r.err;
}

}  // namespace
