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

#include <cmath>
#include <fstream>

#include <Eigen/Eigenvalues>

#include "svo/embedding_space.hpp"
#include "test_support.hpp"

using namespace svo;
using svo::test::TempDir;

namespace {

double cell(const CooccurrenceMatrix& m, const std::string& w, const std::string& c) {
  return Mat(m.counts)(static_cast<Eigen::Index>(m.rows.index(w)),
                       static_cast<Eigen::Index>(m.cols.index(c)));
}

CooccurrenceMatrix from_dense(const Mat& counts) {
  CooccurrenceMatrix m;
  for (Eigen::Index i = 0; i < counts.rows(); ++i) m.rows.add("w" + std::to_string(i), 1);
  for (Eigen::Index j = 0; j < counts.cols(); ++j) m.cols.add("c" + std::to_string(j), 1);
  m.counts = counts.sparseView();
  m.total = counts.sum();
  return m;
}

}  // namespace

TEST_SUITE("embedding_space") {

TEST_CASE("vocabulary rejects duplicates and zero frequencies") {
  Vocabulary v;
  CHECK(v.add("a", 3) == 0);
  CHECK(v.add("b", 1) == 1);
  CHECK(v.index("b") == 1);
  CHECK(v.frequency("a") == 3);
  CHECK_THROWS_AS(v.add("a", 1), Error);
  CHECK_THROWS_AS(v.add("c", 0), Error);
  CHECK_FALSE(v.find("zzz").has_value());
}

TEST_CASE("window counts over a tiny stream") {
  const std::vector<std::string> toks{"a", "b", "a"};
  const auto m = build_cooccurrence(toks, 1, 1);
  CHECK(cell(m, "a", "b") == 2.0);
  CHECK(cell(m, "b", "a") == 2.0);
  CHECK(cell(m, "a", "a") == 0.0);
  CHECK(m.total == 4.0);
}

TEST_CASE("single token gives an all-zero matrix") {
  const std::vector<std::string> toks{"a"};
  const auto m = build_cooccurrence(toks, 1, 1);
  CHECK(m.rows.size() == 1);
  CHECK(m.counts.nonZeros() == 0);
  CHECK(m.total == 0.0);
}

TEST_CASE("min_count filters both axes") {
  const std::vector<std::string> toks{"a", "b", "c", "b"};
  const auto m = build_cooccurrence(toks, 2, 2);
  CHECK(m.rows.size() == 1);
  CHECK(m.cols.size() == 1);
  CHECK_FALSE(m.rows.contains("a"));
  CHECK_FALSE(m.rows.contains("c"));
  CHECK(cell(m, "b", "b") == 0.0);
}

TEST_CASE("empty corpus and bad window are errors") {
  const std::vector<std::string> none;
  CHECK_THROWS_WITH_AS(build_cooccurrence(none, 1, 1), "empty corpus", Error);
  const std::vector<std::string> toks{"a", "b"};
  CHECK_THROWS_AS(build_cooccurrence(toks, 0, 1), Error);
}

TEST_CASE("windows do not cross sentence boundaries") {
  const std::vector<std::vector<std::string>> sents{{"a", "b"}, {"c", "d"}};
  const auto m = build_cooccurrence(sents, CooccurrenceOptions{5, 1, 0});
  CHECK(cell(m, "b", "c") == 0.0);
  CHECK(cell(m, "a", "b") == 1.0);
  CHECK(m.total == 4.0);
}

TEST_CASE("max_contexts keeps the most frequent context words") {
  const std::vector<std::vector<std::string>> sents{{"x", "x", "x", "y", "y", "z"}};
  const auto m = build_cooccurrence(sents, CooccurrenceOptions{2, 1, 2});
  CHECK(m.rows.size() == 3);
  CHECK(m.cols.size() == 2);
  CHECK(m.cols.word(0) == "x");
  CHECK(m.cols.word(1) == "y");
}

TEST_CASE("t-test weighting, diagonal example") {
  Mat counts(2, 2);
  counts << 2, 0, 0, 2;
  const Mat w = ttest_weight(from_dense(counts));
  CHECK(w(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(w(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(w(0, 1) == 0.0);  // raw -0.5, clamped
  CHECK(w(1, 0) == 0.0);
}

TEST_CASE("t-test weighting of independent counts is zero") {
  Mat counts = Mat::Ones(2, 2);
  CHECK(Mat(ttest_weight(from_dense(counts))).cwiseAbs().maxCoeff() == 0.0);
  Mat single = Mat::Zero(2, 2);
  single(0, 0) = 4;
  CHECK(Mat(ttest_weight(from_dense(single)))(0, 0) == 0.0);
}

TEST_CASE("t-test needs co-occurrence mass") {
  CHECK_THROWS_WITH_AS(ttest_weight(from_dense(Mat::Zero(2, 2))), "no co-occurrence mass", Error);
}

TEST_CASE("t-test output is non-negative on random counts") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Mat counts(6, 5);
    for (Eigen::Index i = 0; i < counts.size(); ++i) counts.data()[i] = static_cast<double>(rng.below(4));
    if (counts.sum() == 0.0) continue;
    const Mat w = ttest_weight(from_dense(counts));
    CHECK(w.minCoeff() >= 0.0);
    // Positive exactly where observed joint mass beats the product of marginals.
    const double total = counts.sum();
    for (Eigen::Index i = 0; i < 6; ++i) {
      for (Eigen::Index j = 0; j < 5; ++j) {
        const double expected = counts.row(i).sum() * counts.col(j).sum() / total;
        if (counts(i, j) <= expected) CHECK(w(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("row normalization") {
  Mat m(3, 4);
  m << 3, 4, 0, 0,  //
      0, 0, 0, 0,   //
      1, 1, 1, 1;
  const Mat n = normalize_rows(SparseRowMatrix(m.sparseView()));
  CHECK(n(0, 0) == doctest::Approx(0.6));
  CHECK(n(0, 1) == doctest::Approx(0.8));
  CHECK(n.row(1).norm() == 0.0);
  for (int j = 0; j < 4; ++j) CHECK(n(2, j) == doctest::Approx(0.5));
}

TEST_CASE("normalized rows have unit or zero norm") {
  Rng rng(11);
  Mat m = svo::test::random_mat(rng, 30, 12);
  m.row(4).setZero();
  const Mat n = normalize_rows(SparseRowMatrix(m.sparseView()));
  for (Eigen::Index i = 0; i < n.rows(); ++i) {
    const double norm = n.row(i).norm();
    CHECK((norm == 0.0 || std::abs(norm - 1.0) < 1e-9));
  }
}

TEST_CASE("truncated SVD reconstructs a rank-1 matrix") {
  Rng rng(3);
  Vec u = svo::test::random_vec(rng, 6).normalized();
  Vec v = svo::test::random_vec(rng, 4).normalized();
  const Mat m = u * v.transpose();
  const auto svd = truncated_svd(m, 1);
  const Mat rec = svd.u * svd.sigma.asDiagonal() * svd.v.transpose();
  CHECK((m - rec).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(svd.sigma(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("identity has unit singular values") {
  const Mat id = Mat::Identity(3, 3);
  const auto svd = truncated_svd(id, 3);
  for (int i = 0; i < 3; ++i) CHECK(svd.sigma(i) == doctest::Approx(1.0).epsilon(1e-14));
  const Mat rec = svd.u * svd.sigma.asDiagonal() * svd.v.transpose();
  CHECK((rec - id).norm() < 1e-14);
}

TEST_CASE("full-rank SVD agrees with an eigen-decomposition of M^T M") {
  Rng rng(5);
  const Mat m = svo::test::random_mat(rng, 10, 8);
  const auto svd = truncated_svd(m, 8);
  const Mat rec = svd.u * svd.sigma.asDiagonal() * svd.v.transpose();
  CHECK((m - rec).norm() < 1e-8);
  CHECK((m - rec).norm() / m.norm() < 1e-8);
  for (int i = 1; i < 8; ++i) CHECK(svd.sigma(i) <= svd.sigma(i - 1));

  // Independent route: squared singular values are the eigenvalues of M^T M.
  Eigen::SelfAdjointEigenSolver<Mat> eig(m.transpose() * m);
  const Vec ev = eig.eigenvalues().reverse();  // descending
  for (int i = 0; i < 8; ++i) {
    CHECK(svd.sigma(i) * svd.sigma(i) == doctest::Approx(ev(i)).epsilon(1e-10));
  }
}

TEST_CASE("SVD signs are canonical") {
  Rng rng(9);
  const Mat m = svo::test::random_mat(rng, 7, 5);
  const auto a = truncated_svd(m, 4);
  const auto b = truncated_svd(m, 4);
  CHECK(a.u == b.u);
  for (Eigen::Index j = 0; j < 4; ++j) {
    Eigen::Index arg;
    a.u.col(j).cwiseAbs().maxCoeff(&arg);
    CHECK(a.u(arg, j) > 0.0);
  }
  // Flipping the input's sign flips the singular vectors back to the same U.
  const auto c = truncated_svd(-m, 4);
  CHECK((c.u - a.u).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("K beyond rank pads with zeros, K beyond shape throws") {
  Vec u(4);
  u << 1, 2, 3, 4;
  Vec v(3);
  v << 1, 0, 1;
  const Mat m = u * v.transpose();
  const auto before = warning_count();
  set_warnings_quiet(true);
  const auto svd = truncated_svd(m, 3);
  set_warnings_quiet(false);
  CHECK(warning_count() > before);
  CHECK(svd.rank == 1);
  CHECK(svd.sigma(1) == 0.0);
  CHECK(svd.u.col(2).norm() == 0.0);
  CHECK_THROWS_AS(truncated_svd(m, 4), Error);
}

TEST_CASE("svd_reduce uses U*Sigma by default and U on request") {
  Mat m(3, 3);
  m << 2, 0, 0, 0, 1, 0, 0, 0, 0.5;
  Vocabulary vocab;
  vocab.add("x", 1);
  vocab.add("y", 1);
  vocab.add("z", 1);
  const auto us = svd_reduce(m, vocab, 2);
  CHECK(us.dim() == 2);
  CHECK(us.vector_of("x")(0) == doctest::Approx(2.0));
  CHECK(us.vector_of("y")(1) == doctest::Approx(1.0));
  CHECK(us.vector_of("z").norm() == doctest::Approx(0.0));
  const auto u = svd_reduce(m, vocab, 2, SvdScaling::u);
  CHECK(u.vector_of("x")(0) == doctest::Approx(1.0));
}

TEST_CASE("vector_of returns the stored vector or throws") {
  Vocabulary vocab;
  vocab.add("cat", 5);
  Vec v(2);
  v << 0.25, -1.5;
  const EmbeddingSpace space(vocab, {v}, 2);
  const Vec& a = space.vector_of("cat");
  const Vec& b = space.vector_of("cat");
  CHECK(&a == &b);
  CHECK(a == v);
  CHECK_THROWS_WITH_AS(space.vector_of("dog"), "out-of-vocabulary: dog", Error);
}

TEST_CASE("embedding space rejects bad vectors") {
  Vocabulary vocab;
  vocab.add("cat", 5);
  CHECK_THROWS_AS(EmbeddingSpace(vocab, {Vec::Zero(3)}, 2), Error);
  Vec bad(2);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS(EmbeddingSpace(vocab, {bad}, 2), Error);
}

TEST_CASE("space files round-trip exactly with frequencies") {
  TempDir dir("space");
  Rng rng(1);
  Vocabulary vocab;
  std::vector<Vec> vecs;
  for (int i = 0; i < 5; ++i) {
    vocab.add("w" + std::to_string(i), static_cast<std::uint64_t>(10 + i));
    vecs.push_back(svo::test::random_vec(rng, 3));
  }
  const EmbeddingSpace space(vocab, vecs, 3);
  const std::string path = dir.str("s.txt");
  save_space(space, path, {"config_hash=abc"});
  {
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "K 3 5");
  }
  const EmbeddingSpace back = load_space(path);
  REQUIRE(back.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(back.vector_at(i) == space.vector_at(i));
    CHECK(back.vocabulary().frequency(i) == 10 + i);
  }
}

TEST_CASE("pipeline determinism: same corpus, same space") {
  const std::vector<std::vector<std::string>> corpus{
      {"the", "cat", "eat", "fish"}, {"the", "dog", "eat", "meat"},
      {"a", "cat", "chase", "mouse"}, {"a", "dog", "chase", "cat"},
      {"the", "mouse", "eat", "cheese"}};
  auto build = [&] {
    const auto counts = build_cooccurrence(corpus, CooccurrenceOptions{2, 1, 0});
    return svd_reduce(normalize_rows(ttest_weight(counts)), counts.rows, 3);
  };
  const auto a = build();
  const auto b = build();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.vector_at(i) == b.vector_at(i));
    CHECK(a.vector_at(i).allFinite());
  }
}

}  // TEST_SUITE
