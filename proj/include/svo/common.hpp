//
// Copyright (C) 2026 The svocomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace svo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Any recoverable failure in the library. Messages are meant for users.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Warnings go to stderr unless silenced. The counter lets tests observe them.
void warn(std::string_view message);
void set_warnings_quiet(bool quiet);
std::size_t warning_count();

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

std::vector<std::string> split(std::string_view line, char sep);
std::vector<std::string> split_ws(std::string_view line);
std::string_view trim(std::string_view s);

// Stable across platforms and runs, unlike std::hash.
std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL);
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::string_view stage,
                          std::string_view key = {});
std::string hex64(std::uint64_t x);

/// Portable seeded generator. The std distributions are implementation
/// defined, so bounded draws and shuffles are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform double in [0, 1).
  double uniform();
  double normal();

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }
  template <class T>
  void shuffle(std::vector<T>& items) {
    shuffle(std::span<T>(items));
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace svo
