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

#include <string>
#include <string_view>
#include <vector>

#include "svo/common.hpp"

namespace svo {

enum class CompMethod { add, mult, co, cs, fplus, re, vo };

std::string_view to_string(CompMethod m);
/// Keys: add, mult, co, cs, f+, re, vo.
CompMethod parse_comp(std::string_view key);
const std::vector<std::string>& comp_keys();
/// add and mult use the verb's distributional vector, not a verb matrix.
bool uses_verb_matrix(CompMethod m);

// Primitive operators. All inputs must share dimension K; V is K x K.
Vec copy_object(const Mat& v, const Vec& s, const Vec& o);
Vec copy_subject(const Mat& v, const Vec& s, const Vec& o);
Vec frobenius_additive(const Mat& v, const Vec& s, const Vec& o);
Mat relational(const Mat& v, const Vec& s, const Vec& o);
Vec verb_object(const Mat& v, const Vec& o);
Vec additive(const Vec& s, const Vec& verb, const Vec& o);
Vec multiplicative(const Vec& s, const Vec& verb, const Vec& o);

/// A composed sentence: a K-vector, or a K x K matrix for relational.
class SentenceRepr {
 public:
  static SentenceRepr vector(CompMethod method, Vec v);
  static SentenceRepr matrix(CompMethod method, Mat m);

  bool is_matrix() const { return is_matrix_; }
  CompMethod method() const { return method_; }
  const Vec& vec() const;
  const Mat& mat() const;

 private:
  SentenceRepr(CompMethod method, bool is_matrix) : method_(method), is_matrix_(is_matrix) {}
  CompMethod method_;
  bool is_matrix_;
  Vec vec_;
  Mat mat_;
};

struct CompositionOptions {
  /// Rescale s, v and o to unit length before composing.
  bool normalize_inputs = false;
  /// Use the matrix cosine instead of the raw Frobenius inner product for RE.
  bool normalized_frobenius = false;
};

/// `verb_matrix` is required for co/cs/f+/re/vo, `verb_vector` for add/mult.
SentenceRepr compose(CompMethod method, const Vec& s, const Vec& o, const Mat* verb_matrix,
                     const Vec* verb_vector, const CompositionOptions& opts = {});

/// Cosine for vectors, Frobenius inner product for matrices. Rejects
/// comparisons across methods or kinds. A zero vector gives 0 and a warning.
double similarity(const SentenceRepr& a, const SentenceRepr& b,
                  const CompositionOptions& opts = {});

double frobenius_inner(const Mat& a, const Mat& b);

}  // namespace svo
