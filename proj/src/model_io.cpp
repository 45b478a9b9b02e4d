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

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "seqrec/errors.hpp"
#include "seqrec/util.hpp"

namespace seqrec {

namespace {

constexpr char kMagic[8] = {'S', 'E', 'Q', 'R', 'E', 'C', 'N', 'N'};

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

template <typename T>
void put(std::ostream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ParseError("model", 0, "truncated model file");
  return to_little(v);
}

void put_tensor(std::ostream& out, const std::string& name, const double* data,
                std::uint64_t rows, std::uint64_t cols) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
  out.write(name.data(), static_cast<std::streamsize>(name.size()));
  put<std::uint64_t>(out, rows);
  put<std::uint64_t>(out, cols);
  for (std::uint64_t i = 0; i < rows * cols; ++i) put<double>(out, data[i]);
}

struct RawTensor {
  std::uint64_t rows = 0, cols = 0;
  std::vector<double> data;
};

std::string header_value(const std::map<std::string, std::string>& h, const std::string& key) {
  auto it = h.find(key);
  if (it == h.end()) throw ParseError("model", 0, "header lacks '" + key + "'");
  return it->second;
}

template <typename T>
T header_number(const std::map<std::string, std::string>& h, const std::string& key) {
  const std::string v = header_value(h, key);
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ParseError("model", 0, "bad header value for '" + key + "': " + v);
  return out;
}

// Doubles in the header are stored by bit pattern to round-trip exactly.
std::string double_bits(double v) { return to_hex(std::bit_cast<std::uint64_t>(v)); }

double double_from_bits(const std::map<std::string, std::string>& h, const std::string& key) {
  const std::string v = header_value(h, key);
  std::uint64_t bits = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), bits, 16);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ParseError("model", 0, "bad header value for '" + key + "': " + v);
  return std::bit_cast<double>(bits);
}

void copy_into(const RawTensor& t, Eigen::MatrixXd& m, const std::string& name) {
  if (t.rows != static_cast<std::uint64_t>(m.rows()) || t.cols != static_cast<std::uint64_t>(m.cols()))
    throw ParseError("model", 0, "tensor '" + name + "' has shape " + std::to_string(t.rows) +
                                     "x" + std::to_string(t.cols) + ", expected " +
                                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  std::memcpy(m.data(), t.data.data(), t.data.size() * sizeof(double));
}

void copy_into(const RawTensor& t, Eigen::VectorXd& v, const std::string& name) {
  if (t.rows != static_cast<std::uint64_t>(v.size()) || t.cols != 1)
    throw ParseError("model", 0, "tensor '" + name + "' has the wrong shape");
  std::memcpy(v.data(), t.data.data(), t.data.size() * sizeof(double));
}

}  // namespace

void write_model(const ModelFile& model, std::ostream& out) {
  const auto& c = model.config;
  std::ostringstream header;
  header << "cell=" << to_string(c.cell) << "\n"
         << "hidden_size=" << c.hidden_size << "\n"
         << "layers=" << c.layers << "\n"
         << "bidirectional=" << (c.bidirectional ? 1 : 0) << "\n"
         << "input_size=" << c.input_size << "\n"
         << "output_size=" << c.output_size << "\n"
         << "init_seed=" << c.init_seed << "\n"
         << "features=" << model.features.to_string() << "\n"
         << "catalog_digest=" << to_hex(model.catalog_digest) << "\n";
  if (model.optimizer) {
    const auto& o = *model.optimizer;
    header << "optimizer=" << to_string(o.settings.kind) << "\n"
           << "learning_rate=" << double_bits(o.settings.learning_rate) << "\n"
           << "epsilon=" << double_bits(o.settings.epsilon) << "\n"
           << "momentum=" << double_bits(o.settings.momentum) << "\n"
           << "optimizer_steps=" << o.steps << "\n";
  }
  for (const auto& [k, v] : model.metadata) {
    if (k.find('=') != std::string::npos || k.find('\n') != std::string::npos ||
        v.find('\n') != std::string::npos)
      throw std::invalid_argument("model metadata keys/values must be single-line, no '=' in keys");
    header << "meta." << k << "=" << v << "\n";
  }
  const std::string h = header.str();

  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kModelFormatVersion);
  put<std::uint64_t>(out, h.size());
  out.write(h.data(), static_cast<std::streamsize>(h.size()));

  const auto names = model.params.block_names();
  std::uint32_t count = static_cast<std::uint32_t>(names.size());
  if (model.optimizer) count *= 2;
  put<std::uint32_t>(out, count);

  std::size_t b = 0;
  for (const auto& cell : model.params.cells) {
    put_tensor(out, names[b++], cell.input_weights.data(), cell.input_weights.rows(),
               cell.input_weights.cols());
    put_tensor(out, names[b++], cell.recurrent_weights.data(), cell.recurrent_weights.rows(),
               cell.recurrent_weights.cols());
    put_tensor(out, names[b++], cell.bias.data(), cell.bias.size(), 1);
  }
  put_tensor(out, names[b++], model.params.output_weights.data(),
             model.params.output_weights.rows(), model.params.output_weights.cols());
  put_tensor(out, names[b++], model.params.output_bias.data(), model.params.output_bias.size(), 1);

  if (model.optimizer) {
    const auto& acc = model.optimizer->accumulators;
    const auto blocks = model.params.blocks();
    if (acc.size() != blocks.size())
      throw std::invalid_argument("optimizer snapshot does not match the parameters");
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i].size() != blocks[i].size())
        throw std::invalid_argument("optimizer snapshot does not match the parameters");
      put_tensor(out, "optimizer/" + names[i], acc[i].data(), acc[i].size(), 1);
    }
  }
  if (!out) throw DataError("failed to write model");
}

ModelFile read_model(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw ParseError("model", 0, "not a seqrec model file");
  const auto version = get<std::uint32_t>(in);
  if (version != kModelFormatVersion)
    throw ParseError("model", 0, "unsupported model format version " + std::to_string(version));
  const auto header_len = get<std::uint64_t>(in);
  if (header_len > (1u << 24)) throw ParseError("model", 0, "implausible header length");
  std::string header(header_len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw ParseError("model", 0, "truncated header");

  std::map<std::string, std::string> h;
  ModelFile model;
  std::istringstream lines(header);
  std::string line;
  while (std::getline(lines, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("model", 0, "bad header line '" + line + "'");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key.starts_with("meta."))
      model.metadata[key.substr(5)] = value;
    else
      h[key] = value;
  }
  auto& c = model.config;
  c.cell = parse_cell_kind(header_value(h, "cell"));
  c.hidden_size = header_number<int>(h, "hidden_size");
  c.layers = header_number<int>(h, "layers");
  c.bidirectional = header_number<int>(h, "bidirectional") != 0;
  c.input_size = header_number<int>(h, "input_size");
  c.output_size = header_number<int>(h, "output_size");
  c.init_seed = header_number<std::uint64_t>(h, "init_seed");
  c.validate();
  model.features = FeatureBlocks::parse(header_value(h, "features"));
  {
    const std::string v = header_value(h, "catalog_digest");
    std::from_chars(v.data(), v.data() + v.size(), model.catalog_digest, 16);
  }
  if (h.contains("optimizer")) {
    OptimizerSnapshot o;
    o.settings.kind = parse_optimizer_kind(h["optimizer"]);
    o.settings.learning_rate = double_from_bits(h, "learning_rate");
    o.settings.epsilon = double_from_bits(h, "epsilon");
    o.settings.momentum = double_from_bits(h, "momentum");
    o.steps = header_number<std::uint64_t>(h, "optimizer_steps");
    model.optimizer = std::move(o);
  }

  std::map<std::string, RawTensor> tensors;
  const auto count = get<std::uint32_t>(in);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto name_len = get<std::uint32_t>(in);
    if (name_len > 4096) throw ParseError("model", 0, "implausible tensor name length");
    std::string name(name_len, '\0');
    in.read(name.data(), name_len);
    RawTensor t;
    t.rows = get<std::uint64_t>(in);
    t.cols = get<std::uint64_t>(in);
    if (t.rows * t.cols > (1ull << 32)) throw ParseError("model", 0, "implausible tensor size");
    t.data.resize(t.rows * t.cols);
    for (auto& v : t.data) v = get<double>(in);
    tensors.emplace(std::move(name), std::move(t));
  }

  model.params = NetworkParameters::zeros(c);
  const auto names = model.params.block_names();
  auto find = [&](const std::string& name) -> const RawTensor& {
    auto it = tensors.find(name);
    if (it == tensors.end()) throw ParseError("model", 0, "missing tensor '" + name + "'");
    return it->second;
  };
  std::size_t b = 0;
  for (auto& cell : model.params.cells) {
    copy_into(find(names[b]), cell.input_weights, names[b]);
    ++b;
    copy_into(find(names[b]), cell.recurrent_weights, names[b]);
    ++b;
    copy_into(find(names[b]), cell.bias, names[b]);
    ++b;
  }
  copy_into(find(names[b]), model.params.output_weights, names[b]);
  ++b;
  copy_into(find(names[b]), model.params.output_bias, names[b]);

  if (model.optimizer) {
    const auto blocks = model.params.blocks();
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& t = find("optimizer/" + names[i]);
      if (t.data.size() != blocks[i].size())
        throw ParseError("model", 0, "optimizer tensor for '" + names[i] + "' has the wrong size");
      model.optimizer->accumulators.push_back(t.data);
    }
  }
  return model;
}

void save_model(const ModelFile& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model " + path.string());
  write_model(model, out);
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model " + path.string());
  return read_model(in);
}

}  // namespace seqrec
