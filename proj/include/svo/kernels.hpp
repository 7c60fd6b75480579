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

// Data-parallel inner loops. Each kernel has a plain serial reference in
// `serial::` and an OpenMP version in `parallel::`; the two must agree
// bit for bit, which tests/test_kernels.cpp checks.

#include <cstdint>
#include <span>
#include <vector>

#include "svo/common.hpp"
#include "svo/embedding_space.hpp"

namespace svo::kernels {

enum class Exec { serial, parallel };

int max_threads();

struct PairCount {
  int row;
  int col;
  double count;
  bool operator==(const PairCount&) const = default;
};

// `row_of[id]` / `col_of[id]` map a token id to its matrix row / column, or -1.
// Output is sorted by (row, col).
struct WindowCountInput {
  std::span<const std::vector<int>> sentences;
  std::span<const int> row_of;
  std::span<const int> col_of;
  int window;
};

// In-place t-test on a row-major sparse count matrix.
struct TtestInput {
  std::span<const double> row_sums;
  std::span<const double> col_sums;
  double total;
};

namespace serial {
std::vector<PairCount> count_window_pairs(const WindowCountInput& in);
void ttest_inplace(SparseRowMatrix& m, const TtestInput& in);
void normalize_rows_inplace(SparseRowMatrix& m);
std::vector<double> cosine_scores(const Vec& target, std::span<const Vec> vectors,
                                  std::span<const std::size_t> ids);
/// s_i^T V o_i for each selected row i of S and O.
std::vector<double> bilinear_logits(const Mat& v, const Mat& s, const Mat& o,
                                    std::span<const std::size_t> rows);
}  // namespace serial

namespace parallel {
std::vector<PairCount> count_window_pairs(const WindowCountInput& in);
void ttest_inplace(SparseRowMatrix& m, const TtestInput& in);
void normalize_rows_inplace(SparseRowMatrix& m);
std::vector<double> cosine_scores(const Vec& target, std::span<const Vec> vectors,
                                  std::span<const std::size_t> ids);
std::vector<double> bilinear_logits(const Mat& v, const Mat& s, const Mat& o,
                                    std::span<const std::size_t> rows);
}  // namespace parallel

/// Cosine that returns 0 when either side is a zero vector.
double safe_cosine(const Vec& a, const Vec& b);

}  // namespace svo::kernels
