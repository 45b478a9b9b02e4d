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

#ifndef SEQREC_UTIL_HPP_
#define SEQREC_UTIL_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace seqrec {

// splitmix64-seeded xoshiro256**. The standard distributions are
// implementation-defined, so everything seeded goes through this generator to
// keep splits and initialisations identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  // Uniform in [0, bound), rejection-sampled. bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, 1) with 53 bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t s_[4];
};

class Fnv1a {
 public:
  void update(std::string_view bytes);
  void update(const void* data, std::size_t n);
  template <typename T>
  void update_value(const T& v) {
    update(&v, sizeof(T));
  }
  std::uint64_t digest() const { return h_; }
  std::string hex() const;

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::string to_hex(std::uint64_t v);
std::uint64_t file_digest(const std::filesystem::path& path);

std::vector<std::string_view> split(std::string_view s, std::string_view delim);
std::string_view trim(std::string_view s);

// Shortest round-trippable representation is not needed in reports; a fixed
// number of decimals keeps CSVs byte-stable and diff-friendly.
std::string format_fixed(double v, int decimals);

}  // namespace seqrec

#endif  // SEQREC_UTIL_HPP_
