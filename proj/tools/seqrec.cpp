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

// seqrec command-line tool: prepare | train | evaluate | baseline | oracle | sweep.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "seqrec/baselines.hpp"
#include "seqrec/dataset.hpp"
#include "seqrec/errors.hpp"
#include "seqrec/features.hpp"
#include "seqrec/harness.hpp"
#include "seqrec/metrics.hpp"
#include "seqrec/model_io.hpp"
#include "seqrec/popularity.hpp"
#include "seqrec/recommender.hpp"
#include "seqrec/util.hpp"

namespace fs = std::filesystem;
using namespace seqrec;

namespace {

// Raised for a bad flag value; the message starts with the flag name.
struct FlagError : std::runtime_error {
  FlagError(const std::string& flag, const std::string& what)
      : std::runtime_error(flag + ": " + what) {}
};

struct DataOptions {
  std::string data;
  std::string format = "movielens-1m";
  std::uint64_t seed = 1;
  std::size_t n_test = 500;
  std::size_t n_validation = 500;
  std::string split_file;
  std::string out;
  std::size_t k = 10;
};

struct TrainOptions {
  std::string cell = "lstm";
  int hidden = 20;
  int layers = 1;
  bool bidirectional = false;
  std::uint64_t init_seed = 1;
  std::string optimizer = "adagrad";
  double lr = 0.1;
  double epsilon = 1e-8;
  double momentum = 0.9;
  std::string loss = "xent";
  double delta = 0.0;
  std::string features = "none";
  int epochs = 10;
  std::size_t validation_every = 1000;
  std::uint64_t shuffle_seed = 1;
  std::size_t batch_size = 1;
  double clip_norm = 0.0;
  double max_seconds = 0.0;
};

void add_data_options(CLI::App* cmd, DataOptions& o) {
  cmd->add_option("--data", o.data, "Data directory (ratings.dat, users.dat, movies.dat) or ratings file")
      ->envname("SEQREC_DATA");
  cmd->add_option("--format", o.format, "Ratings format: movielens-1m | generic-csv")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Split seed")->capture_default_str();
  cmd->add_option("--n-test", o.n_test, "Number of test users")->capture_default_str();
  cmd->add_option("--n-validation", o.n_validation, "Number of validation users")
      ->capture_default_str();
  cmd->add_option("--split", o.split_file, "Split manifest written by `prepare`");
  cmd->add_option("--out", o.out, "Run directory (default runs/<timestamp>-<digest>)");
  cmd->add_option("--k", o.k, "Recommendation list length")->capture_default_str();
}

void add_train_options(CLI::App* cmd, TrainOptions& o) {
  cmd->add_option("--cell", o.cell, "Recurrent cell: lstm | gru")->capture_default_str();
  cmd->add_option("--hidden", o.hidden, "Hidden units per direction and layer")
      ->capture_default_str();
  cmd->add_option("--layers", o.layers, "Stacked layers (1 or 2)")->capture_default_str();
  cmd->add_flag("--bidirectional", o.bidirectional, "Bidirectional single-layer network");
  cmd->add_option("--init-seed", o.init_seed, "Parameter initialisation seed")
      ->capture_default_str();
  cmd->add_option("--optimizer", o.optimizer, "sgd | momentum | adagrad")->capture_default_str();
  cmd->add_option("--lr", o.lr, "Learning rate")->capture_default_str();
  cmd->add_option("--epsilon", o.epsilon, "Adagrad epsilon")->capture_default_str();
  cmd->add_option("--momentum", o.momentum, "Momentum coefficient")->capture_default_str();
  cmd->add_option("--loss", o.loss, "xent | diversity")->capture_default_str();
  cmd->add_option("--delta", o.delta, "Diversity bias (with --loss diversity)")
      ->capture_default_str();
  cmd->add_option("--features", o.features, "none | all | comma list of user,item,interaction")
      ->capture_default_str();
  cmd->add_option("--epochs", o.epochs, "Training epochs")->capture_default_str();
  cmd->add_option("--validation-every", o.validation_every,
                  "Training sequences between validation passes")
      ->capture_default_str();
  cmd->add_option("--shuffle-seed", o.shuffle_seed, "Epoch shuffle seed")->capture_default_str();
  cmd->add_option("--batch-size", o.batch_size, "Sequences per update")->capture_default_str();
  cmd->add_option("--clip-norm", o.clip_norm, "Gradient norm clip (0 disables)")
      ->capture_default_str();
  cmd->add_option("--max-seconds", o.max_seconds, "Training wall-clock budget (0 disables)")
      ->capture_default_str();
}

TrainConfig to_train_config(const TrainOptions& o, std::size_t k) {
  TrainConfig c;
  try {
    c.network.cell = parse_cell_kind(o.cell);
  } catch (const std::exception& e) {
    throw FlagError("--cell", e.what());
  }
  if (o.hidden < 1) throw FlagError("--hidden", "must be >= 1");
  if (o.layers < 1 || o.layers > 2) throw FlagError("--layers", "must be 1 or 2");
  if (o.bidirectional && o.layers != 1)
    throw FlagError("--bidirectional", "cannot be combined with --layers 2");
  c.network.hidden_size = o.hidden;
  c.network.layers = o.layers;
  c.network.bidirectional = o.bidirectional;
  c.network.init_seed = o.init_seed;
  try {
    c.optimizer.kind = parse_optimizer_kind(o.optimizer);
  } catch (const std::exception& e) {
    throw FlagError("--optimizer", e.what());
  }
  if (!(o.lr > 0.0)) throw FlagError("--lr", "must be > 0");
  c.optimizer.learning_rate = o.lr;
  c.optimizer.epsilon = o.epsilon;
  c.optimizer.momentum = o.momentum;
  try {
    c.optimizer.validate();
  } catch (const std::exception& e) {
    throw FlagError("--optimizer", e.what());
  }
  if (o.delta < 0.0) throw FlagError("--delta", "must be >= 0");
  if (o.loss == "xent" && o.delta != 0.0)
    throw FlagError("--delta", "requires --loss diversity");
  try {
    c.loss = LossSpec::parse(o.loss, o.delta);
  } catch (const std::exception& e) {
    throw FlagError("--loss", e.what());
  }
  try {
    c.features = FeatureBlocks::parse(o.features);
  } catch (const std::exception& e) {
    throw FlagError("--features", e.what());
  }
  if (o.epochs < 1) throw FlagError("--epochs", "must be >= 1");
  if (o.validation_every < 1) throw FlagError("--validation-every", "must be >= 1");
  if (o.batch_size < 1) throw FlagError("--batch-size", "must be >= 1");
  if (o.clip_norm < 0.0) throw FlagError("--clip-norm", "must be >= 0");
  if (o.max_seconds < 0.0) throw FlagError("--max-seconds", "must be >= 0");
  c.epochs = o.epochs;
  c.validation_every = o.validation_every;
  c.shuffle_seed = o.shuffle_seed;
  c.batch_size = o.batch_size;
  c.clip_norm = o.clip_norm;
  c.max_seconds = o.max_seconds;
  c.k = k;
  c.validate();
  return c;
}

struct Data {
  InteractionLog log;
  DatasetSplit split;
  PopularityTable popularity;
  std::shared_ptr<const SideFeatures> features;
  fs::path dir;
  // file name -> FNV-1a digest, for the manifest
  std::map<std::string, std::string> digests;
};

std::shared_ptr<const SideFeatures> load_features(const Data& d) {
  const fs::path users = d.dir / "users.dat", movies = d.dir / "movies.dat";
  if (fs::exists(users) && fs::exists(movies))
    return std::make_shared<SideFeatures>(load_side_features(users, movies, d.log));
  return std::make_shared<SideFeatures>(SideFeatures::ratings_only(d.log));
}

Data load_data(const DataOptions& o, bool with_features) {
  if (o.data.empty()) throw FlagError("--data", "required (or set SEQREC_DATA)");
  if (o.k < 1) throw FlagError("--k", "must be >= 1");
  RatingFormat format;
  try {
    format = parse_rating_format(o.format);
  } catch (const std::exception& e) {
    throw FlagError("--format", e.what());
  }
  Data d;
  fs::path ratings = o.data;
  if (fs::is_directory(ratings)) {
    d.dir = ratings;
    ratings /= format == RatingFormat::kMovielens1M ? "ratings.dat" : "ratings.csv";
  } else {
    d.dir = ratings.parent_path();
  }
  if (!fs::exists(ratings)) throw FlagError("--data", "no such file " + ratings.string());
  d.log = load_ratings(ratings, format);
  d.digests[ratings.filename().string()] = to_hex(file_digest(ratings));
  if (!o.split_file.empty()) {
    if (!fs::exists(o.split_file)) throw FlagError("--split", "no such file " + o.split_file);
    d.split = load_split_manifest(d.log, o.split_file);
    d.digests["split"] = to_hex(file_digest(o.split_file));
  } else {
    d.split = split_users(d.log, o.n_test, o.n_validation, o.seed);
  }
  d.popularity = build_popularity(d.split.train, d.log.num_items());
  if (with_features) {
    d.features = load_features(d);
    for (const char* f : {"users.dat", "movies.dat"})
      if (fs::exists(d.dir / f)) d.digests[f] = to_hex(file_digest(d.dir / f));
  }
  return d;
}

std::string timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
  return buf;
}

// Creates the run directory and writes manifest.txt into it.
fs::path open_run(const DataOptions& o, const Data& d, const std::string& command,
                  const std::map<std::string, std::string>& settings) {
  std::ostringstream text;
  text << "command=" << command << "\n";
  text << "split_seed=" << d.split.seed << "\n"
       << "n_train=" << d.split.train.size() << "\n"
       << "n_validation=" << d.split.validation.size() << "\n"
       << "n_test=" << d.split.test.size() << "\n"
       << "k=" << o.k << "\n"
       << "catalog_digest=" << to_hex(d.log.catalog_digest()) << "\n";
  for (const auto& [name, digest] : d.digests) text << "data." << name << "=" << digest << "\n";
  for (const auto& [key, value] : settings) text << key << "=" << value << "\n";
  Fnv1a h;
  h.update(text.str());
  const std::string digest = h.hex();

  fs::path dir = o.out.empty() ? fs::path("runs") / (timestamp() + "-" + digest.substr(0, 8))
                               : fs::path(o.out);
  fs::create_directories(dir);
  std::ofstream out(dir / "manifest.txt");
  out << text.str() << "config_digest=" << digest << "\n";
  if (!out) throw DataError("cannot write " + (dir / "manifest.txt").string());
  return dir;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

void print_report(const EvaluationReport& r) {
  std::cout << r.metadata.method << ": sps@" << r.k << "=" << format_fixed(r.sps, 2)
            << " recall=" << format_fixed(r.recall, 2)
            << " precision=" << format_fixed(r.precision, 2)
            << " user_coverage=" << format_fixed(r.user_coverage, 2)
            << " item_coverage=" << r.item_coverage << "\n";
}

void write_outputs(const EvaluationReport& r, const Data& d, const fs::path& dir) {
  write_report(r, d.log, (dir / "per_user.csv").string(), (dir / "aggregate.csv").string());
  print_report(r);
  std::cout << "wrote " << (dir / "aggregate.csv").string() << "\n";
}

std::span<const UserSequence> role_users(const DatasetSplit& split, const std::string& role) {
  if (role == "test") return split.test;
  if (role == "validation") return split.validation;
  throw FlagError("--role", "expected test or validation, got '" + role + "'");
}

void print_progress(const TrainingLogRow& row) {
  std::cerr << "sequences=" << row.sequences << " epoch=" << format_fixed(row.epoch, 2)
            << " loss=" << format_fixed(row.train_loss, 4) << " val_sps="
            << (std::isnan(row.val_sps) ? std::string("nan") : format_fixed(row.val_sps, 2))
            << " t=" << format_fixed(row.seconds, 1) << "s\n";
}

// --- commands -------------------------------------------------------------

int cmd_prepare(const DataOptions& o) {
  Data d = load_data(o, false);
  const fs::path dir = open_run(o, d, "prepare", {});
  save_split_manifest(d.split, d.log, dir / "split.csv");
  save_popularity_csv(d.popularity, d.log, dir / "popularity.csv");
  std::cout << "users=" << d.log.num_users() << " items=" << d.log.num_items()
            << " interactions=" << d.log.num_interactions() << "\n"
            << "wrote " << (dir / "split.csv").string() << " and "
            << (dir / "popularity.csv").string() << "\n";
  return 0;
}

std::map<std::string, std::string> train_settings(const TrainConfig& c) {
  auto kv = parse_key_values(c.to_key_values());
  std::map<std::string, std::string> out;
  for (auto& [k, v] : kv) out["train." + k] = v;
  return out;
}

TrainResult run_training(const TrainConfig& config, const Data& d, const fs::path& dir) {
  std::ofstream(dir / "config.txt") << config.to_key_values();
  TrainResult result = train(config, d.split, d.features, d.popularity, print_progress);
  result.log.save_csv((dir / "training_log.csv").string());
  save_model(to_model_file(result, d.log.catalog_digest(), config), dir / "model.bin");
  return result;
}

int cmd_train(const DataOptions& o, const TrainOptions& t) {
  const TrainConfig config = to_train_config(t, o.k);
  Data d = load_data(o, true);
  const fs::path dir = open_run(o, d, "train", train_settings(config));
  const TrainResult result = run_training(config, d, dir);
  std::cout << result.model.name() << ": best val sps@" << o.k << "="
            << format_fixed(result.best_val_sps, 2) << " after " << result.best_sequences
            << " sequences\n"
            << "wrote " << (dir / "model.bin").string() << " and "
            << (dir / "training_log.csv").string() << "\n";
  return 0;
}

int cmd_evaluate(const DataOptions& o, const std::string& model_path, const std::string& role) {
  if (model_path.empty()) throw FlagError("--model", "required");
  if (!fs::exists(model_path)) throw FlagError("--model", "no such file " + model_path);
  const ModelFile file = load_model(model_path);
  Data d = load_data(o, file.features.any());
  if (file.catalog_digest != d.log.catalog_digest())
    throw FlagError("--model", "trained on a different item catalog than --data");
  const auto users = role_users(d.split, role);
  const RnnRecommender model = from_model_file(file, d.log.num_items(), d.features);
  std::map<std::string, std::string> settings{{"model", to_hex(file_digest(model_path))},
                                              {"role", role}};
  const fs::path dir = open_run(o, d, "evaluate", settings);
  ReportMetadata meta{model.name(), d.split.seed, ""};
  if (auto it = file.metadata.find("config_digest"); it != file.metadata.end())
    meta.config_digest = it->second;
  write_outputs(evaluate(model, users, o.k, meta), d, dir);
  return 0;
}

std::vector<std::size_t> parse_sizes(const std::string& flag, const std::string& text) {
  std::vector<std::size_t> out;
  for (auto part : split(text, ",")) {
    part = trim(part);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || v == 0)
      throw FlagError(flag, "expected comma-separated positive integers, got '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw FlagError(flag, "empty list");
  return out;
}

int cmd_baseline(const DataOptions& o, const std::string& method, std::size_t neighbors,
                 const std::string& grid_text, const std::string& role) {
  Data d = load_data(o, false);
  const auto users = role_users(d.split, role);
  std::map<std::string, std::string> settings{{"method", method}, {"role", role}};
  std::unique_ptr<Recommender> rec;
  std::optional<KnnTuning> tuning;
  if (method == "markov") {
    rec = std::make_unique<MarkovChain>(d.split.train, d.popularity);
  } else if (method == "pop" || method == "popularity") {
    rec = std::make_unique<PopularityRecommender>(d.popularity);
  } else if (method == "knn") {
    if (neighbors == 0) {
      const auto grid = parse_sizes("--knn-grid", grid_text);
      tuning = tune_knn(d.split, d.log.num_items(), d.popularity, grid);
      neighbors = tuning->best_k;
      settings["knn_grid"] = grid_text;
    }
    if (neighbors > d.split.train.size())
      throw FlagError("--neighbors", "exceeds the number of training users");
    rec = std::make_unique<UserKnn>(d.split.train, d.log.num_items(), neighbors, d.popularity);
    settings["neighbors"] = std::to_string(neighbors);
  } else {
    throw FlagError("--method", "expected markov, knn or pop, got '" + method + "'");
  }
  Fnv1a h;
  for (const auto& [k, v] : settings) h.update(k + "=" + v + "\n");
  const fs::path dir = open_run(o, d, "baseline", settings);
  if (tuning) {
    std::ofstream out(dir / "knn_tuning.csv");
    out << "k,val_sps\n";
    for (const auto& [k, sps] : tuning->validation_sps)
      out << k << "," << format_fixed(sps, 4) << "\n";
    std::cout << "knn: best k=" << tuning->best_k << " on validation\n";
  }
  ReportMetadata meta{rec->name(), d.split.seed, h.hex()};
  write_outputs(evaluate(*rec, users, o.k, meta), d, dir);
  return 0;
}

int cmd_oracle(const DataOptions& o, const std::string& cutoff_text, const std::string& role) {
  Data d = load_data(o, false);
  const auto users = role_users(d.split, role);
  const std::string text =
      cutoff_text.empty() ? "1,10,100,1000," + std::to_string(d.log.num_items()) : cutoff_text;
  auto cutoffs = parse_sizes("--cutoffs", text);
  for (auto c : cutoffs)
    if (c > d.log.num_items())
      throw FlagError("--cutoffs", std::to_string(c) + " exceeds the catalog size " +
                                       std::to_string(d.log.num_items()));
  const fs::path dir = open_run(o, d, "oracle", {{"cutoffs", text}, {"role", role}});
  const auto rows = oracle_curve(users, d.popularity, cutoffs, o.k);
  write_oracle_csv(rows, (dir / "oracle.csv").string());
  std::cout << "wrote " << rows.size() << " rows to " << (dir / "oracle.csv").string() << "\n";
  return 0;
}

// "name=v1,v2,..." -> (name, values)
std::pair<std::string, std::vector<std::string>> parse_vary(const std::string& arg) {
  auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size())
    throw FlagError("--vary", "expected name=v1,v2,... got '" + arg + "'");
  std::vector<std::string> values;
  for (auto v : split(std::string_view(arg).substr(eq + 1), ",")) values.emplace_back(trim(v));
  return {arg.substr(0, eq), values};
}

void set_train_option(TrainOptions& t, const std::string& key, const std::string& value) {
  auto num = [&](auto& field) {
    std::istringstream in(value);
    in >> field;
    if (!in || !in.eof()) throw FlagError("--vary", "bad value '" + value + "' for " + key);
  };
  if (key == "cell") t.cell = value;
  else if (key == "hidden") num(t.hidden);
  else if (key == "layers") num(t.layers);
  else if (key == "bidirectional") t.bidirectional = value == "1" || value == "true";
  else if (key == "init_seed") num(t.init_seed);
  else if (key == "optimizer") t.optimizer = value;
  else if (key == "lr") num(t.lr);
  else if (key == "epsilon") num(t.epsilon);
  else if (key == "momentum") num(t.momentum);
  else if (key == "loss") t.loss = value;
  else if (key == "delta") num(t.delta);
  else if (key == "features") t.features = value;
  else if (key == "epochs") num(t.epochs);
  else if (key == "shuffle_seed") num(t.shuffle_seed);
  else if (key == "batch_size") num(t.batch_size);
  else throw FlagError("--vary", "unknown setting '" + key + "'");
}

int cmd_sweep(const DataOptions& o, const TrainOptions& base,
              const std::vector<std::string>& vary_args, const std::string& role) {
  if (vary_args.empty()) throw FlagError("--vary", "at least one --vary is required");
  std::vector<std::pair<std::string, std::vector<std::string>>> vary;
  for (const auto& s : vary_args) vary.push_back(parse_vary(s));

  // Cartesian product, first --vary outermost.
  std::vector<std::vector<std::string>> combos{{}};
  for (const auto& [key, values] : vary) {
    std::vector<std::vector<std::string>> next;
    for (const auto& c : combos)
      for (const auto& v : values) {
        next.push_back(c);
        next.back().push_back(v);
      }
    combos = std::move(next);
  }
  std::vector<TrainConfig> configs;
  for (const auto& c : combos) {
    TrainOptions t = base;
    for (std::size_t i = 0; i < vary.size(); ++i) set_train_option(t, vary[i].first, c[i]);
    configs.push_back(to_train_config(t, o.k));
  }

  bool any_features = false;
  for (const auto& c : configs) any_features |= c.features.any();
  Data d = load_data(o, any_features);
  const auto users = role_users(d.split, role);
  std::map<std::string, std::string> settings = train_settings(configs.front());
  for (std::size_t i = 0; i < vary_args.size(); ++i)
    settings["vary." + std::to_string(i)] = vary_args[i];
  settings["role"] = role;
  const fs::path dir = open_run(o, d, "sweep", settings);

  std::ofstream summary(dir / "summary.csv");
  summary << "run";
  for (const auto& [key, values] : vary) summary << "," << key;
  summary << ",input_size,best_val_sps,best_sequences,sps,recall,precision,user_coverage,"
             "item_coverage\n";
  std::size_t best = 0;
  double best_sps = -1.0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const fs::path run = dir / ("run" + std::to_string(i));
    fs::create_directories(run);
    std::cerr << "run " << i << ":";
    for (std::size_t j = 0; j < vary.size(); ++j)
      std::cerr << " " << vary[j].first << "=" << combos[i][j];
    std::cerr << "\n";
    const TrainResult result = run_training(configs[i], d, run);
    const EvaluationReport report = evaluate(
        result.model, users, o.k, {result.model.name(), d.split.seed, configs[i].digest()});
    write_report(report, d.log, (run / "per_user.csv").string(),
                 (run / "aggregate.csv").string());
    print_report(report);
    summary << i;
    for (const auto& v : combos[i]) summary << "," << v;
    summary << "," << result.model.config().input_size << ","
            << format_fixed(result.best_val_sps, 4) << "," << result.best_sequences << ","
            << format_fixed(report.sps, 4) << "," << format_fixed(report.recall, 4) << ","
            << format_fixed(report.precision, 4) << "," << format_fixed(report.user_coverage, 4)
            << "," << report.item_coverage << "\n";
    if (result.best_val_sps > best_sps) {
      best_sps = result.best_val_sps;
      best = i;
    }
  }
  std::cout << "best run " << best << " (validation sps " << format_fixed(best_sps, 2) << ")\n"
            << "wrote " << (dir / "summary.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequence-based collaborative filtering: baselines and recurrent recommenders"};
  app.set_config("--config", "", "Config file of flag=value lines ([command] sections)");
  app.require_subcommand(1);

  DataOptions data;
  TrainOptions train_opts;
  std::string model_path, role = "test", method = "markov", knn_grid = "50,100,200,300,500",
                          cutoffs;
  std::size_t neighbors = 0;
  std::vector<std::string> vary;

  auto* prepare = app.add_subcommand("prepare", "Split users and write the popularity table");
  add_data_options(prepare, data);

  auto* train_cmd = app.add_subcommand("train", "Train a recurrent recommender");
  add_data_options(train_cmd, data);
  add_train_options(train_cmd, train_opts);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate a trained model");
  add_data_options(evaluate_cmd, data);
  evaluate_cmd->add_option("--model", model_path, "Model file written by `train`");
  evaluate_cmd->add_option("--role", role, "test | validation")->capture_default_str();

  auto* baseline = app.add_subcommand("baseline", "Evaluate a non-neural baseline");
  add_data_options(baseline, data);
  baseline->add_option("--method", method, "markov | knn | pop")->capture_default_str();
  baseline->add_option("--neighbors", neighbors, "KNN neighbourhood size (0 tunes on validation)")
      ->capture_default_str();
  baseline->add_option("--knn-grid", knn_grid, "Neighbourhood sizes tried when tuning")
      ->capture_default_str();
  baseline->add_option("--role", role, "test | validation")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Popularity-constrained oracle curve");
  add_data_options(oracle, data);
  oracle->add_option("--cutoffs", cutoffs, "Comma-separated popularity cutoffs t");
  oracle->add_option("--role", role, "test | validation")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Train a grid of configurations");
  add_data_options(sweep, data);
  add_train_options(sweep, train_opts);
  sweep->add_option("--vary", vary, "Setting to vary, name=v1,v2,... (repeatable)");
  sweep->add_option("--role", role, "test | validation")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*prepare) return cmd_prepare(data);
    if (*train_cmd) return cmd_train(data, train_opts);
    if (*evaluate_cmd) return cmd_evaluate(data, model_path, role);
    if (*baseline) return cmd_baseline(data, method, neighbors, knn_grid, role);
    if (*oracle) return cmd_oracle(data, cutoffs, role);
    if (*sweep) return cmd_sweep(data, train_opts, vary, role);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
