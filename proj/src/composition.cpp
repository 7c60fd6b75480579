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

#include "svo/composition.hpp"

#include <cmath>

namespace svo {

namespace {

void check_dims(const Mat& v, const Vec& s, const Vec& o, const char* op) {
  if (v.rows() != v.cols() || v.rows() != s.size() || s.size() != o.size()) {
    throw Error(std::string(op) + ": dimension mismatch (V " + std::to_string(v.rows()) + "x" +
                std::to_string(v.cols()) + ", s " + std::to_string(s.size()) + ", o " +
                std::to_string(o.size()) + ")");
  }
}

Vec unit(const Vec& x) {
  const double n = x.norm();
  return n > 0.0 ? Vec(x / n) : x;
}

}  // namespace

std::string_view to_string(CompMethod m) {
  switch (m) {
    case CompMethod::add: return "add";
    case CompMethod::mult: return "mult";
    case CompMethod::co: return "co";
    case CompMethod::cs: return "cs";
    case CompMethod::fplus: return "f+";
    case CompMethod::re: return "re";
    case CompMethod::vo: return "vo";
  }
  return "?";
}

const std::vector<std::string>& comp_keys() {
  static const std::vector<std::string> keys{"add", "mult", "co", "cs", "f+", "re", "vo"};
  return keys;
}

CompMethod parse_comp(std::string_view key) {
  static const CompMethod all[] = {CompMethod::add, CompMethod::mult, CompMethod::co,
                                   CompMethod::cs,  CompMethod::fplus, CompMethod::re,
                                   CompMethod::vo};
  for (CompMethod m : all) {
    if (to_string(m) == key) return m;
  }
  throw Error("unknown composition '" + std::string(key) +
              "' (valid: add, mult, co, cs, f+, re, vo)");
}

bool uses_verb_matrix(CompMethod m) { return m != CompMethod::add && m != CompMethod::mult; }

// (s^T V)_i * o_i
Vec copy_object(const Mat& v, const Vec& s, const Vec& o) {
  check_dims(v, s, o, "copy_object");
  const Eigen::Index k = s.size();
  Vec out(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) acc += v(j, i) * s(j);
    out(i) = acc * o(i);
  }
  return out;
}

// s_i * (V o)_i
Vec copy_subject(const Mat& v, const Vec& s, const Vec& o) {
  check_dims(v, s, o, "copy_subject");
  const Eigen::Index k = s.size();
  Vec out(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) acc += v(i, j) * o(j);
    out(i) = acc * s(i);
  }
  return out;
}

Vec frobenius_additive(const Mat& v, const Vec& s, const Vec& o) {
  return copy_object(v, s, o) + copy_subject(v, s, o);
}

Mat relational(const Mat& v, const Vec& s, const Vec& o) {
  check_dims(v, s, o, "relational");
  return ((s * o.transpose()).array() * v.array()).matrix();
}

Vec verb_object(const Mat& v, const Vec& o) {
  if (v.cols() != o.size()) throw Error("verb_object: dimension mismatch");
  return v * o;
}

Vec additive(const Vec& s, const Vec& verb, const Vec& o) {
  if (s.size() != verb.size() || s.size() != o.size()) throw Error("additive: dimension mismatch");
  return s + verb + o;
}

Vec multiplicative(const Vec& s, const Vec& verb, const Vec& o) {
  if (s.size() != verb.size() || s.size() != o.size()) {
    throw Error("multiplicative: dimension mismatch");
  }
  return s.cwiseProduct(verb).cwiseProduct(o);
}

SentenceRepr SentenceRepr::vector(CompMethod method, Vec v) {
  if (method == CompMethod::re) throw Error("relational composition produces a matrix");
  SentenceRepr r(method, false);
  r.vec_ = std::move(v);
  return r;
}

SentenceRepr SentenceRepr::matrix(CompMethod method, Mat m) {
  if (method != CompMethod::re) throw Error("only relational composition produces a matrix");
  SentenceRepr r(method, true);
  r.mat_ = std::move(m);
  return r;
}

const Vec& SentenceRepr::vec() const {
  if (is_matrix_) throw Error("sentence representation holds a matrix");
  return vec_;
}

const Mat& SentenceRepr::mat() const {
  if (!is_matrix_) throw Error("sentence representation holds a vector");
  return mat_;
}

SentenceRepr compose(CompMethod method, const Vec& s_in, const Vec& o_in, const Mat* verb_matrix,
                     const Vec* verb_vector, const CompositionOptions& opts) {
  const Vec s = opts.normalize_inputs ? unit(s_in) : s_in;
  const Vec o = opts.normalize_inputs ? unit(o_in) : o_in;
  if (uses_verb_matrix(method) && verb_matrix == nullptr) {
    throw Error(std::string("composition '") + std::string(to_string(method)) +
                "' needs a verb matrix");
  }
  if (!uses_verb_matrix(method) && verb_vector == nullptr) {
    throw Error(std::string("composition '") + std::string(to_string(method)) +
                "' needs a verb vector");
  }
  switch (method) {
    case CompMethod::co: return SentenceRepr::vector(method, copy_object(*verb_matrix, s, o));
    case CompMethod::cs: return SentenceRepr::vector(method, copy_subject(*verb_matrix, s, o));
    case CompMethod::fplus:
      return SentenceRepr::vector(method, frobenius_additive(*verb_matrix, s, o));
    case CompMethod::re: return SentenceRepr::matrix(method, relational(*verb_matrix, s, o));
    case CompMethod::vo: return SentenceRepr::vector(method, verb_object(*verb_matrix, o));
    case CompMethod::add: {
      const Vec v = opts.normalize_inputs ? unit(*verb_vector) : *verb_vector;
      return SentenceRepr::vector(method, additive(s, v, o));
    }
    case CompMethod::mult: {
      const Vec v = opts.normalize_inputs ? unit(*verb_vector) : *verb_vector;
      return SentenceRepr::vector(method, multiplicative(s, v, o));
    }
  }
  throw Error("unreachable composition");
}

double frobenius_inner(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("frobenius: shape mismatch");
  return (a.array() * b.array()).sum();
}

double similarity(const SentenceRepr& a, const SentenceRepr& b, const CompositionOptions& opts) {
  if (a.method() != b.method()) {
    throw Error("cannot compare '" + std::string(to_string(a.method())) + "' with '" +
                std::string(to_string(b.method())) + "' representations");
  }
  if (a.is_matrix() != b.is_matrix()) throw Error("cannot compare a vector with a matrix");
  if (a.is_matrix()) {
    const double inner = frobenius_inner(a.mat(), b.mat());
    if (!opts.normalized_frobenius) return inner;
    const double na = a.mat().norm();
    const double nb = b.mat().norm();
    if (na == 0.0 || nb == 0.0) {
      warn("matrix cosine with a zero matrix; similarity set to 0");
      return 0.0;
    }
    return inner / (na * nb);
  }
  if (a.vec().size() != b.vec().size()) throw Error("similarity: dimension mismatch");
  const double na = a.vec().norm();
  const double nb = b.vec().norm();
  if (na == 0.0 || nb == 0.0) {
    warn("cosine with a zero vector; similarity set to 0");
    return 0.0;
  }
  return a.vec().dot(b.vec()) / (na * nb);
}

}  // namespace svo
