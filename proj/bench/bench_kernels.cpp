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

// Serial vs OpenMP timings for the hot kernels.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "svo/kernels.hpp"

using namespace svo;
namespace k = svo::kernels;

namespace {

double time_best(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-22s serial %9.3f ms  parallel %9.3f ms  speedup %5.2fx\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 5;
  std::printf("threads: %d\n", k::max_threads());
  Rng rng(1);

  std::vector<std::vector<int>> sents(20000);
  for (auto& s : sents) {
    s.resize(5 + rng.below(20));
    for (auto& t : s) t = static_cast<int>(rng.below(5000));
  }
  std::vector<int> row_of(5000), col_of(5000);
  for (int i = 0; i < 5000; ++i) {
    row_of[i] = i;
    col_of[i] = i < 2000 ? i : -1;
  }
  const k::WindowCountInput win{sents, row_of, col_of, 5};
  report("count_window_pairs", time_best(reps, [&] { k::serial::count_window_pairs(win); }),
         time_best(reps, [&] { k::parallel::count_window_pairs(win); }));

  Mat dense = Mat::Zero(3000, 2000);
  for (int n = 0; n < 300000; ++n) dense(rng.below(3000), rng.below(2000)) += 1.0;
  const SparseRowMatrix counts = dense.sparseView();
  std::vector<double> rs(3000), cs(2000);
  for (int i = 0; i < 3000; ++i) rs[i] = dense.row(i).sum();
  for (int j = 0; j < 2000; ++j) cs[j] = dense.col(j).sum();
  const k::TtestInput tin{rs, cs, dense.sum()};
  report("ttest_inplace", time_best(reps, [&] { auto m = counts; k::serial::ttest_inplace(m, tin); }),
         time_best(reps, [&] { auto m = counts; k::parallel::ttest_inplace(m, tin); }));
  report("normalize_rows", time_best(reps, [&] { auto m = counts; k::serial::normalize_rows_inplace(m); }),
         time_best(reps, [&] { auto m = counts; k::parallel::normalize_rows_inplace(m); }));

  std::vector<Vec> vecs(50000, Vec(300));
  for (auto& v : vecs)
    for (int i = 0; i < 300; ++i) v(i) = rng.normal();
  std::vector<std::size_t> ids(vecs.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  const Vec target = vecs[0];
  report("cosine_scores", time_best(reps, [&] { k::serial::cosine_scores(target, vecs, ids); }),
         time_best(reps, [&] { k::parallel::cosine_scores(target, vecs, ids); }));

  Mat v(100, 100), s(20000, 100), o(20000, 100);
  for (Mat* m : {&v, &s, &o})
    for (Eigen::Index i = 0; i < m->size(); ++i) m->data()[i] = rng.normal();
  std::vector<std::size_t> rows(20000);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  report("bilinear_logits", time_best(reps, [&] { k::serial::bilinear_logits(v, s, o, rows); }),
         time_best(reps, [&] { k::parallel::bilinear_logits(v, s, o, rows); }));
  return 0;
}
