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
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/SparseCore>

#include "svo/common.hpp"

namespace svo {

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Ordered word list with corpus frequencies. Index lookup inverts the list.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Throws on a duplicate word or a zero frequency.
  std::size_t add(const std::string& word, std::uint64_t frequency);

  std::optional<std::size_t> find(const std::string& word) const;
  std::size_t index(const std::string& word) const;
  bool contains(const std::string& word) const { return find(word).has_value(); }

  const std::string& word(std::size_t i) const { return words_[i]; }
  std::uint64_t frequency(std::size_t i) const { return freq_[i]; }
  std::uint64_t frequency(const std::string& word) const { return freq_[index(word)]; }

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::vector<std::uint64_t> freq_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct CooccurrenceMatrix {
  Vocabulary rows;   // target words
  Vocabulary cols;   // context words
  SparseRowMatrix counts;
  double total = 0.0;
};

struct CooccurrenceOptions {
  int window = 5;
  std::uint64_t min_count = 1;
  /// Keep only this many most frequent words as contexts; 0 keeps all.
  std::size_t max_contexts = 10000;
};

/// Counts symmetric-window co-occurrences inside each sentence.
/// Words below `min_count` are dropped from both axes but keep their
/// positions; a word is never counted as its own context.
CooccurrenceMatrix build_cooccurrence(std::span<const std::vector<std::string>> sentences,
                                      const CooccurrenceOptions& opts);
/// Flat token stream, treated as one sentence.
CooccurrenceMatrix build_cooccurrence(std::span<const std::string> tokens, int window,
                                      std::uint64_t min_count);

/// Positive t-test association. Throws when the matrix has no mass.
SparseRowMatrix ttest_weight(const CooccurrenceMatrix& counts);

/// Scales every nonzero row to unit length; zero rows stay zero.
SparseRowMatrix normalize_rows(const SparseRowMatrix& m);

enum class SvdScaling { us, u };

struct TruncatedSvd {
  Mat u;        // rows x K
  Vec sigma;    // K, non-increasing
  Mat v;        // cols x K
  Eigen::Index rank = 0;  // numerically nonzero singular values among the K
};

/// Rank-K SVD with sign canonicalization: in every left singular vector the
/// entry of largest magnitude is positive. Dimensions beyond the numerical
/// rank are zeroed (with a warning).
TruncatedSvd truncated_svd(const Mat& m, Eigen::Index k);

/// K-dimensional word vectors. Immutable after construction.
class EmbeddingSpace {
 public:
  EmbeddingSpace(Vocabulary vocab, std::vector<Vec> vectors, int dim);

  int dim() const { return dim_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  std::size_t size() const { return vectors_.size(); }
  bool contains(const std::string& word) const { return vocab_.contains(word); }

  /// Stored vector for `word`; throws "out-of-vocabulary: <word>".
  const Vec& vector_of(const std::string& word) const;
  const Vec& vector_at(std::size_t i) const { return vectors_[i]; }
  const std::vector<Vec>& vectors() const { return vectors_; }

 private:
  Vocabulary vocab_;
  std::vector<Vec> vectors_;
  int dim_;
};

EmbeddingSpace svd_reduce(const SparseRowMatrix& weighted, const Vocabulary& rows, int k,
                          SvdScaling scaling = SvdScaling::us);
EmbeddingSpace svd_reduce(const Mat& weighted, const Vocabulary& rows, int k,
                          SvdScaling scaling = SvdScaling::us);

// Text format: "K <dim> <n>" then "<word> <v1> ... <vK>" per line.
// Lines starting with '#' after the vectors are metadata and ignored.
// Frequencies go to a sidecar "<path>.freq".
void save_space(const EmbeddingSpace& space, const std::string& path,
                const std::vector<std::string>& metadata = {});
EmbeddingSpace load_space(const std::string& path);

/// One sentence per line, whitespace tokenized.
std::vector<std::vector<std::string>> read_corpus(const std::string& path);

}  // namespace svo
