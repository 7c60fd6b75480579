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

#include <doctest.h>

#include <vector>

#include "svo/kernels.hpp"
#include "test_support.hpp"

using namespace svo;
namespace k = svo::kernels;

TEST_SUITE("kernels") {

TEST_CASE("window counting: serial and parallel agree") {
  Rng rng(21);
  std::vector<std::vector<int>> sents(200);
  for (auto& s : sents) {
    s.resize(3 + rng.below(20));
    for (auto& t : s) t = static_cast<int>(rng.below(40));
  }
  std::vector<int> row_of(40), col_of(40);
  for (int i = 0; i < 40; ++i) {
    row_of[i] = i;
    col_of[i] = i < 25 ? i : -1;
  }
  const k::WindowCountInput in{sents, row_of, col_of, 3};
  const auto a = k::serial::count_window_pairs(in);
  const auto b = k::parallel::count_window_pairs(in);
  CHECK(a == b);
  CHECK_FALSE(a.empty());
}

TEST_CASE("t-test and normalization: serial and parallel agree") {
  Rng rng(22);
  Mat dense(30, 20);
  for (Eigen::Index i = 0; i < dense.size(); ++i) dense.data()[i] = static_cast<double>(rng.below(3));
  SparseRowMatrix a = dense.sparseView();
  SparseRowMatrix b = a;
  std::vector<double> rs(30), cs(20);
  for (int i = 0; i < 30; ++i) rs[i] = dense.row(i).sum();
  for (int j = 0; j < 20; ++j) cs[j] = dense.col(j).sum();
  const k::TtestInput in{rs, cs, dense.sum()};
  k::serial::ttest_inplace(a, in);
  k::parallel::ttest_inplace(b, in);
  CHECK(Mat(a) == Mat(b));
  k::serial::normalize_rows_inplace(a);
  k::parallel::normalize_rows_inplace(b);
  CHECK(Mat(a) == Mat(b));
}

TEST_CASE("cosine and bilinear scoring: serial and parallel agree") {
  Rng rng(23);
  std::vector<Vec> vecs;
  for (int i = 0; i < 100; ++i) vecs.push_back(svo::test::random_vec(rng, 8));
  vecs[7].setZero();
  std::vector<std::size_t> ids(100);
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = (i * 37) % 100;
  const Vec target = svo::test::random_vec(rng, 8);
  const auto ca = k::serial::cosine_scores(target, vecs, ids);
  CHECK(ca == k::parallel::cosine_scores(target, vecs, ids));
  CHECK(k::safe_cosine(target, vecs[7]) == 0.0);

  const Mat v = svo::test::random_mat(rng, 8, 8);
  const Mat s = svo::test::random_mat(rng, 64, 8);
  const Mat o = svo::test::random_mat(rng, 64, 8);
  std::vector<std::size_t> rows{3, 1, 63, 0, 10};
  const auto la = k::serial::bilinear_logits(v, s, o, rows);
  CHECK(la == k::parallel::bilinear_logits(v, s, o, rows));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(rows[i]);
    const double naive = s.row(r).dot(v * o.row(r).transpose());
    CHECK(la[i] == doctest::Approx(naive).epsilon(1e-12));
  }
}

}  // TEST_SUITE
