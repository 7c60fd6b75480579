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

#include "svo/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <utility>

#ifdef SVO_HAVE_OPENMP
#include <omp.h>
#endif

namespace svo::kernels {

int max_threads() {
#ifdef SVO_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

double safe_cosine(const Vec& a, const Vec& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

namespace {

inline double ttest_cell(double count, double row_sum, double col_sum, double total) {
  const double p_wc = count / total;
  const double p_w = row_sum / total;
  const double p_c = col_sum / total;
  const double expected = p_w * p_c;
  if (expected <= 0.0) return 0.0;
  const double t = (p_wc - expected) / std::sqrt(expected);
  return t > 0.0 ? t : 0.0;
}

inline double bilinear(const Mat& v, const Mat& s, const Mat& o, std::size_t r) {
  const Eigen::Index k = v.rows();
  const auto i = static_cast<Eigen::Index>(r);
  double acc = 0.0;
  for (Eigen::Index a = 0; a < k; ++a) {
    double inner = 0.0;
    for (Eigen::Index b = 0; b < k; ++b) inner += v(a, b) * o(i, b);
    acc += s(i, a) * inner;
  }
  return acc;
}

inline std::uint64_t pack(int row, int col) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(row)) << 32) |
         static_cast<std::uint32_t>(col);
}

}  // namespace

namespace serial {

std::vector<PairCount> count_window_pairs(const WindowCountInput& in) {
  std::map<std::pair<int, int>, double> cells;
  for (const auto& sent : in.sentences) {
    const auto n = static_cast<long>(sent.size());
    for (long i = 0; i < n; ++i) {
      const int id = sent[static_cast<std::size_t>(i)];
      if (id < 0 || in.row_of[static_cast<std::size_t>(id)] < 0) continue;
      const int row = in.row_of[static_cast<std::size_t>(id)];
      for (long j = std::max(0L, i - in.window); j <= std::min(n - 1, i + in.window); ++j) {
        if (j == i) continue;
        const int cid = sent[static_cast<std::size_t>(j)];
        if (cid < 0 || cid == id) continue;
        const int col = in.col_of[static_cast<std::size_t>(cid)];
        if (col < 0) continue;
        cells[{row, col}] += 1.0;
      }
    }
  }
  std::vector<PairCount> out;
  out.reserve(cells.size());
  for (const auto& [key, count] : cells) out.push_back({key.first, key.second, count});
  return out;
}

void ttest_inplace(SparseRowMatrix& m, const TtestInput& in) {
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseRowMatrix::InnerIterator it(m, r); it; ++it) {
      it.valueRef() = ttest_cell(it.value(), in.row_sums[static_cast<std::size_t>(r)],
                                 in.col_sums[static_cast<std::size_t>(it.col())], in.total);
    }
  }
}

void normalize_rows_inplace(SparseRowMatrix& m) {
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    double sq = 0.0;
    for (SparseRowMatrix::InnerIterator it(m, r); it; ++it) sq += it.value() * it.value();
    if (sq == 0.0) continue;
    const double norm = std::sqrt(sq);
    for (SparseRowMatrix::InnerIterator it(m, r); it; ++it) it.valueRef() /= norm;
  }
}

std::vector<double> cosine_scores(const Vec& target, std::span<const Vec> vectors,
                                  std::span<const std::size_t> ids) {
  std::vector<double> out;
  out.reserve(ids.size());
  for (std::size_t id : ids) out.push_back(safe_cosine(target, vectors[id]));
  return out;
}

std::vector<double> bilinear_logits(const Mat& v, const Mat& s, const Mat& o,
                                    std::span<const std::size_t> rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(bilinear(v, s, o, r));
  return out;
}

}  // namespace serial

namespace parallel {

std::vector<PairCount> count_window_pairs(const WindowCountInput& in) {
  const int nthreads = max_threads();
  std::vector<std::unordered_map<std::uint64_t, double>> local(
      static_cast<std::size_t>(nthreads));
  const auto nsent = static_cast<long>(in.sentences.size());

#pragma omp parallel for schedule(dynamic, 64)
  for (long si = 0; si < nsent; ++si) {
#ifdef SVO_HAVE_OPENMP
    auto& cells = local[static_cast<std::size_t>(omp_get_thread_num())];
#else
    auto& cells = local[0];
#endif
    const auto& sent = in.sentences[static_cast<std::size_t>(si)];
    const auto n = static_cast<long>(sent.size());
    for (long i = 0; i < n; ++i) {
      const int id = sent[static_cast<std::size_t>(i)];
      if (id < 0) continue;
      const int row = in.row_of[static_cast<std::size_t>(id)];
      if (row < 0) continue;
      const long lo = std::max(0L, i - in.window);
      const long hi = std::min(n - 1, i + in.window);
      for (long j = lo; j <= hi; ++j) {
        const int cid = sent[static_cast<std::size_t>(j)];
        if (j == i || cid < 0 || cid == id) continue;
        const int col = in.col_of[static_cast<std::size_t>(cid)];
        if (col >= 0) cells[pack(row, col)] += 1.0;
      }
    }
  }

  // Counts are small integers, so the merge order cannot change the sums.
  std::unordered_map<std::uint64_t, double> merged;
  for (auto& cells : local) {
    for (const auto& [key, count] : cells) merged[key] += count;
  }
  std::vector<std::pair<std::uint64_t, double>> sorted(merged.begin(), merged.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<PairCount> out;
  out.reserve(sorted.size());
  for (const auto& [key, count] : sorted) {
    out.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu), count});
  }
  return out;
}

void ttest_inplace(SparseRowMatrix& m, const TtestInput& in) {
  const Eigen::Index rows = m.outerSize();
#pragma omp parallel for schedule(static)
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double row_sum = in.row_sums[static_cast<std::size_t>(r)];
    for (SparseRowMatrix::InnerIterator it(m, r); it; ++it) {
      it.valueRef() = ttest_cell(it.value(), row_sum,
                                 in.col_sums[static_cast<std::size_t>(it.col())], in.total);
    }
  }
}

void normalize_rows_inplace(SparseRowMatrix& m) {
  const Eigen::Index rows = m.outerSize();
#pragma omp parallel for schedule(static)
  for (Eigen::Index r = 0; r < rows; ++r) {
    double sq = 0.0;
    for (SparseRowMatrix::InnerIterator it(m, r); it; ++it) sq += it.value() * it.value();
    if (sq == 0.0) continue;
    const double norm = std::sqrt(sq);
    for (SparseRowMatrix::InnerIterator it(m, r); it; ++it) it.valueRef() /= norm;
  }
}

std::vector<double> cosine_scores(const Vec& target, std::span<const Vec> vectors,
                                  std::span<const std::size_t> ids) {
  std::vector<double> out(ids.size());
  const auto n = static_cast<long>(ids.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        safe_cosine(target, vectors[ids[static_cast<std::size_t>(i)]]);
  }
  return out;
}

std::vector<double> bilinear_logits(const Mat& v, const Mat& s, const Mat& o,
                                    std::span<const std::size_t> rows) {
  std::vector<double> out(rows.size());
  const auto n = static_cast<long>(rows.size());
#pragma omp parallel for schedule(static) if (n * v.size() > 32768)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = bilinear(v, s, o, rows[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace parallel
}  // namespace svo::kernels
