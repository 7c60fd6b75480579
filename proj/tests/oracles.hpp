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

#include <cmath>
#include <map>
#include <vector>

#include "svo/common.hpp"

namespace svo::test {

/// Rank by counting: strictly smaller entries plus the midpoint of the tie group.
inline std::vector<double> counting_ranks(const std::vector<double>& xs) {
  std::vector<double> r(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double less = 0, equal = 0;
    for (double x : xs) {
      less += x < xs[i];
      equal += x == xs[i];
    }
    r[i] = less + (equal + 1.0) / 2.0;
  }
  return r;
}

/// Tie-corrected rank correlation from sums of squares of rank differences.
inline double spearman_tie_corrected(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  auto tie_term = [](const std::vector<double>& v) {
    std::map<double, double> groups;
    for (double x : v) groups[x] += 1;
    double t = 0;
    for (const auto& [_, c] : groups) t += (c * c * c - c) / 12.0;
    return t;
  };
  const auto rx = counting_ranks(xs), ry = counting_ranks(ys);
  double d2 = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  const double base = (n * n * n - n) / 12.0;
  const double sx = base - tie_term(xs), sy = base - tie_term(ys);
  return (sx + sy - d2) / (2.0 * std::sqrt(sx * sy));
}

/// No-tie shortcut.
inline double spearman_textbook(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  const auto rx = counting_ranks(xs), ry = counting_ranks(ys);
  double d2 = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

inline bool has_variance(const std::vector<double>& v) {
  for (double x : v) {
    if (x != v.front()) return true;
  }
  return false;
}

/// Every list of length n over {1,2,3}, in lexicographic order.
inline std::vector<std::vector<double>> all_lists(std::size_t n) {
  std::vector<std::vector<double>> out;
  std::vector<double> cur(n, 1.0);
  while (true) {
    out.push_back(cur);
    std::size_t i = n;
    while (i > 0 && cur[i - 1] == 3.0) cur[--i] = 1.0;
    if (i == 0) break;
    cur[i - 1] += 1.0;
  }
  return out;
}

}  // namespace svo::test
