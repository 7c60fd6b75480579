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

#include "svo/composition.hpp"
#include "test_support.hpp"

using namespace svo;

namespace {

Mat m22(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_SUITE("composition") {

TEST_CASE("copy-object") {
  const Vec s = v2(1, 1), o = v2(1, 0);
  CHECK(copy_object(Mat::Identity(2, 2), v2(2, 3), v2(5, 7)) == v2(10, 21));
  CHECK(copy_object(m22(1, 2, 3, 4), s, o) == v2(4, 0));
  CHECK(copy_object(m22(1, 2, 3, 4), s, Vec::Zero(2)).norm() == 0.0);
}

TEST_CASE("copy-subject") {
  CHECK(copy_subject(Mat::Identity(2, 2), v2(2, 3), v2(5, 7)) == v2(10, 21));
  CHECK(copy_subject(m22(1, 2, 3, 4), v2(1, 0), v2(1, 1)) == v2(3, 0));
}

TEST_CASE("Frobenius additive") {
  const Mat v = m22(1, 2, 3, 4);
  const Vec ones = v2(1, 1);
  CHECK(copy_object(v, ones, ones) == v2(4, 6));
  CHECK(copy_subject(v, ones, ones) == v2(3, 7));
  CHECK(frobenius_additive(v, ones, ones) == v2(7, 13));
  CHECK(frobenius_additive(Mat::Identity(2, 2), v2(2, 3), v2(5, 7)) == v2(20, 42));
}

TEST_CASE("relational") {
  CHECK(relational(Mat::Identity(2, 2), v2(1, 2), v2(3, 4)) == m22(3, 0, 0, 8));
  CHECK(relational(Mat::Ones(2, 2), v2(1, 2), v2(3, 4)) == m22(3, 4, 6, 8));
  CHECK(relational(m22(1, 2, 3, 4), Vec::Zero(2), v2(3, 4)).norm() == 0.0);
}

TEST_CASE("verb-object") {
  CHECK(verb_object(Mat::Identity(2, 2), v2(3, -1)) == v2(3, -1));
  CHECK(verb_object(m22(1, 2, 3, 4), v2(1, 1)) == v2(3, 7));
}

TEST_CASE("additive and multiplicative baselines") {
  CHECK(additive(v2(1, 2), Vec::Zero(2), Vec::Zero(2)) == v2(1, 2));
  CHECK(multiplicative(v2(1, 2), Vec::Ones(2), v2(3, 4)) == v2(3, 8));
}

TEST_CASE("similarity") {
  const auto a = SentenceRepr::vector(CompMethod::add, v2(1, 2));
  CHECK(similarity(a, a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(similarity(SentenceRepr::vector(CompMethod::add, v2(1, 0)),
                   SentenceRepr::vector(CompMethod::add, v2(0, 1))) == 0.0);
  CHECK(similarity(SentenceRepr::matrix(CompMethod::re, Mat::Identity(2, 2)),
                   SentenceRepr::matrix(CompMethod::re, m22(2, 0, 0, 3))) == 5.0);
  CompositionOptions norm;
  norm.normalized_frobenius = true;
  CHECK(similarity(SentenceRepr::matrix(CompMethod::re, Mat::Identity(2, 2)),
                   SentenceRepr::matrix(CompMethod::re, 4.0 * Mat::Identity(2, 2)), norm) ==
        doctest::Approx(1.0));
}

TEST_CASE("zero-vector cosine is 0 with a warning") {
  const auto before = warning_count();
  set_warnings_quiet(true);
  const double sim = similarity(SentenceRepr::vector(CompMethod::mult, Vec::Zero(2)),
                                SentenceRepr::vector(CompMethod::mult, v2(1, 1)));
  set_warnings_quiet(false);
  CHECK(sim == 0.0);
  CHECK(warning_count() > before);
}

TEST_CASE("similarity rejects mixed methods") {
  CHECK_THROWS_AS(similarity(SentenceRepr::vector(CompMethod::co, v2(1, 0)),
                             SentenceRepr::vector(CompMethod::cs, v2(1, 0))),
                  Error);
}

TEST_CASE("compose dispatches on method") {
  const Mat v = m22(1, 2, 3, 4);
  const Vec s = v2(1, 1), o = v2(1, 1), verb = v2(2, 2);
  CHECK(compose(CompMethod::fplus, s, o, &v, nullptr).vec() == v2(7, 13));
  CHECK(compose(CompMethod::re, s, o, &v, nullptr).is_matrix());
  CHECK(compose(CompMethod::add, s, o, nullptr, &verb).vec() == v2(4, 4));
  CHECK_THROWS_AS(compose(CompMethod::co, s, o, nullptr, &verb), Error);
  CHECK_THROWS_AS(compose(CompMethod::mult, s, o, &v, nullptr), Error);
  for (const auto& key : comp_keys()) CHECK(to_string(parse_comp(key)) == key);
  CHECK_THROWS_AS(parse_comp("xyz"), Error);
}

TEST_CASE("identities hold on random inputs") {
  Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(6));
    const Mat v = svo::test::random_mat(rng, k, k);
    const Vec s = svo::test::random_vec(rng, k), o = svo::test::random_vec(rng, k);
    const Vec verb = svo::test::random_vec(rng, k);
    CHECK(frobenius_additive(v, s, o) == copy_object(v, s, o) + copy_subject(v, s, o));
    CHECK(copy_subject(v.transpose(), o, s) == copy_object(v, s, o));
    CHECK(relational(Mat::Ones(k, k), s, o) == s * o.transpose());
    const Vec o2 = svo::test::random_vec(rng, k);
    const double a = rng.normal(), b = rng.normal();
    CHECK((verb_object(v, a * o + b * o2) - (a * verb_object(v, o) + b * verb_object(v, o2)))
              .cwiseAbs().maxCoeff() < 1e-12);
    CHECK((additive(s, verb, o) - additive(o, s, verb)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((additive(s, verb, o) - additive(verb, o, s)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((multiplicative(s, verb, o) - multiplicative(o, verb, s)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(copy_object(v, s, o).allFinite());
    CHECK(relational(v, s, o).allFinite());
  }
}

TEST_CASE("cosine is scale-invariant, Frobenius is bilinear") {
  Rng rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec x = svo::test::random_vec(rng, 4), y = svo::test::random_vec(rng, 4);
    const double c = 0.1 + rng.uniform() * 5;
    CHECK(similarity(SentenceRepr::vector(CompMethod::vo, c * x), SentenceRepr::vector(CompMethod::vo, y)) ==
          doctest::Approx(similarity(SentenceRepr::vector(CompMethod::vo, x), SentenceRepr::vector(CompMethod::vo, y))));
    const Mat a = svo::test::random_mat(rng, 3, 3), b = svo::test::random_mat(rng, 3, 3);
    CHECK(frobenius_inner(c * a, b) == doctest::Approx(c * frobenius_inner(a, b)));
  }
}

TEST_CASE("argument order matters for the matrix methods") {
  const Mat v = m22(1, 2, 3, 4);
  const Vec s = v2(1, 0), o = v2(0, 1);
  CHECK(copy_object(v, s, o) != copy_object(v, o, s));
  CHECK(copy_subject(v, s, o) != copy_subject(v, o, s));
  CHECK(frobenius_additive(v, s, o) != frobenius_additive(v, o, s));
  CHECK(relational(v, s, o) != relational(v, o, s));
  CHECK(verb_object(v, o) != verb_object(v, s));
}

}  // TEST_SUITE
