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

#include "svo/embedding_space.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/SVD>

#include "svo/kernels.hpp"

namespace svo {

std::size_t Vocabulary::add(const std::string& word, std::uint64_t frequency) {
  if (word.empty()) throw Error("vocabulary: empty word");
  if (frequency < 1) throw Error("vocabulary: word '" + word + "' has zero frequency");
  auto [it, inserted] = index_.emplace(word, words_.size());
  if (!inserted) throw Error("vocabulary: duplicate word '" + word + "'");
  words_.push_back(word);
  freq_.push_back(frequency);
  return it->second;
}

std::optional<std::size_t> Vocabulary::find(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocabulary::index(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) throw Error("out-of-vocabulary: " + word);
  return it->second;
}

CooccurrenceMatrix build_cooccurrence(std::span<const std::vector<std::string>> sentences,
                                      const CooccurrenceOptions& opts) {
  if (opts.window < 1) throw Error("window must be >= 1");
  if (opts.min_count < 1) throw Error("min_count must be >= 1");

  std::map<std::string, std::uint64_t> freq;
  std::size_t ntokens = 0;
  for (const auto& sent : sentences) {
    for (const auto& tok : sent) ++freq[tok];
    ntokens += sent.size();
  }
  if (ntokens == 0) throw Error("empty corpus");

  // Frequency descending, then word; std::map already gives the word order.
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (const auto& [w, f] : freq) {
    if (f >= opts.min_count) kept.emplace_back(w, f);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  CooccurrenceMatrix out;
  for (const auto& [w, f] : kept) out.rows.add(w, f);
  const std::size_t ncols =
      opts.max_contexts == 0 ? kept.size() : std::min(kept.size(), opts.max_contexts);
  for (std::size_t i = 0; i < ncols; ++i) out.cols.add(kept[i].first, kept[i].second);

  // Token ids over the full (unfiltered) type list so positions are preserved.
  std::unordered_map<std::string, int> ids;
  std::vector<int> row_of;
  std::vector<int> col_of;
  ids.reserve(freq.size());
  for (const auto& [w, f] : freq) {
    const int id = static_cast<int>(ids.size());
    ids.emplace(w, id);
    auto r = out.rows.find(w);
    auto c = out.cols.find(w);
    row_of.push_back(r ? static_cast<int>(*r) : -1);
    col_of.push_back(c ? static_cast<int>(*c) : -1);
  }
  std::vector<std::vector<int>> encoded;
  encoded.reserve(sentences.size());
  for (const auto& sent : sentences) {
    std::vector<int> e;
    e.reserve(sent.size());
    for (const auto& tok : sent) e.push_back(ids.at(tok));
    encoded.push_back(std::move(e));
  }

  const auto cells = kernels::parallel::count_window_pairs(
      {.sentences = encoded, .row_of = row_of, .col_of = col_of, .window = opts.window});

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(cells.size());
  double total = 0.0;
  for (const auto& c : cells) {
    triplets.emplace_back(c.row, c.col, c.count);
    total += c.count;
  }
  out.counts.resize(static_cast<Eigen::Index>(out.rows.size()),
                    static_cast<Eigen::Index>(out.cols.size()));
  out.counts.setFromTriplets(triplets.begin(), triplets.end());
  out.total = total;
  return out;
}

CooccurrenceMatrix build_cooccurrence(std::span<const std::string> tokens, int window,
                                      std::uint64_t min_count) {
  std::vector<std::vector<std::string>> one{std::vector<std::string>(tokens.begin(), tokens.end())};
  return build_cooccurrence(one, CooccurrenceOptions{window, min_count, 0});
}

SparseRowMatrix ttest_weight(const CooccurrenceMatrix& counts) {
  if (!(counts.total > 0.0)) throw Error("no co-occurrence mass");
  const auto& m = counts.counts;
  std::vector<double> row_sums(static_cast<std::size_t>(m.rows()), 0.0);
  std::vector<double> col_sums(static_cast<std::size_t>(m.cols()), 0.0);
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseRowMatrix::InnerIterator it(m, r); it; ++it) {
      row_sums[static_cast<std::size_t>(r)] += it.value();
      col_sums[static_cast<std::size_t>(it.col())] += it.value();
    }
  }
  SparseRowMatrix out = m;
  out.makeCompressed();
  kernels::parallel::ttest_inplace(out, {row_sums, col_sums, counts.total});
  out.prune(0.0);
  return out;
}

SparseRowMatrix normalize_rows(const SparseRowMatrix& m) {
  SparseRowMatrix out = m;
  out.makeCompressed();
  kernels::parallel::normalize_rows_inplace(out);
  return out;
}

TruncatedSvd truncated_svd(const Mat& m, Eigen::Index k) {
  if (k < 1) throw Error("SVD dimension must be positive");
  if (k > std::min(m.rows(), m.cols())) {
    throw Error("SVD dimension " + std::to_string(k) + " exceeds min(rows, cols) = " +
                std::to_string(std::min(m.rows(), m.cols())));
  }
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& sv = svd.singularValues();

  TruncatedSvd out;
  out.u = svd.matrixU().leftCols(k);
  out.v = svd.matrixV().leftCols(k);
  out.sigma = sv.head(k);

  const double tol = sv.size() > 0 ? sv(0) * static_cast<double>(std::max(m.rows(), m.cols())) *
                                         std::numeric_limits<double>::epsilon()
                                   : 0.0;
  Eigen::Index rank = 0;
  while (rank < k && out.sigma(rank) > tol) ++rank;
  out.rank = rank;
  if (rank < k) {
    warn("SVD dimension " + std::to_string(k) + " exceeds matrix rank " + std::to_string(rank) +
         "; trailing dimensions padded with zeros");
    out.u.rightCols(k - rank).setZero();
    out.v.rightCols(k - rank).setZero();
    out.sigma.tail(k - rank).setZero();
  }

  for (Eigen::Index j = 0; j < rank; ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < out.u.rows(); ++i) {
      const double a = std::abs(out.u(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (out.u(arg, j) < 0.0) {
      out.u.col(j) *= -1.0;
      out.v.col(j) *= -1.0;
    }
  }
  return out;
}

EmbeddingSpace::EmbeddingSpace(Vocabulary vocab, std::vector<Vec> vectors, int dim)
    : vocab_(std::move(vocab)), vectors_(std::move(vectors)), dim_(dim) {
  if (dim_ < 1) throw Error("embedding dimension must be positive");
  if (vectors_.size() != vocab_.size()) {
    throw Error("embedding space: " + std::to_string(vectors_.size()) + " vectors for " +
                std::to_string(vocab_.size()) + " words");
  }
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i].size() != dim_) {
      throw Error("embedding space: vector for '" + vocab_.word(i) + "' has length " +
                  std::to_string(vectors_[i].size()) + ", expected " + std::to_string(dim_));
    }
    if (!vectors_[i].allFinite()) {
      throw Error("embedding space: non-finite vector for '" + vocab_.word(i) + "'");
    }
  }
}

const Vec& EmbeddingSpace::vector_of(const std::string& word) const {
  return vectors_[vocab_.index(word)];
}

EmbeddingSpace svd_reduce(const Mat& weighted, const Vocabulary& rows, int k,
                          SvdScaling scaling) {
  if (static_cast<std::size_t>(weighted.rows()) != rows.size()) {
    throw Error("svd_reduce: matrix has " + std::to_string(weighted.rows()) + " rows but " +
                std::to_string(rows.size()) + " words");
  }
  const TruncatedSvd svd = truncated_svd(weighted, k);
  Mat emb = svd.u;
  if (scaling == SvdScaling::us) emb = emb * svd.sigma.asDiagonal();
  std::vector<Vec> vectors;
  vectors.reserve(rows.size());
  for (Eigen::Index i = 0; i < emb.rows(); ++i) vectors.emplace_back(emb.row(i).transpose());
  return EmbeddingSpace(rows, std::move(vectors), k);
}

EmbeddingSpace svd_reduce(const SparseRowMatrix& weighted, const Vocabulary& rows, int k,
                          SvdScaling scaling) {
  return svd_reduce(Mat(weighted), rows, k, scaling);
}

void save_space(const EmbeddingSpace& space, const std::string& path,
                const std::vector<std::string>& metadata) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "K " << space.dim() << ' ' << space.size() << '\n';
  const auto& vocab = space.vocabulary();
  for (std::size_t i = 0; i < space.size(); ++i) {
    out << vocab.word(i);
    for (double x : space.vector_at(i)) out << ' ' << format_double(x);
    out << '\n';
  }
  for (const auto& line : metadata) out << "# " << line << '\n';
  if (!out) throw Error("write failed: " + path);

  std::ofstream freq(path + ".freq");
  if (!freq) throw Error("cannot write " + path + ".freq");
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    freq << vocab.word(i) << '\t' << vocab.frequency(i) << '\n';
  }
}

EmbeddingSpace load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open space file " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(path + ": empty space file");
  const auto header = split_ws(line);
  if (header.size() != 3 || header[0] != "K") {
    throw Error(path + ":1: expected header 'K <dim> <vocab_size>'");
  }
  const auto dim = parse_int(header[1]);
  const auto n = parse_int(header[2]);
  if (dim < 1 || n < 0) throw Error(path + ":1: bad header values");

  std::map<std::string, std::uint64_t> freq;
  const std::string freq_path = path + ".freq";
  if (std::filesystem::exists(freq_path)) {
    std::ifstream fin(freq_path);
    std::string fl;
    std::size_t lineno = 0;
    while (std::getline(fin, fl)) {
      ++lineno;
      if (trim(fl).empty()) continue;
      const auto cols = split(fl, '\t');
      if (cols.size() != 2) throw Error(freq_path + ":" + std::to_string(lineno) + ": malformed");
      freq[cols[0]] = static_cast<std::uint64_t>(parse_int(cols[1]));
    }
  }

  Vocabulary vocab;
  std::vector<Vec> vectors;
  vectors.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw Error(path + ": truncated, expected " +
                                             std::to_string(n) + " vectors");
    const auto cols = split_ws(line);
    const std::string where = path + ":" + std::to_string(i + 2);
    if (static_cast<long long>(cols.size()) != dim + 1) {
      throw Error(where + ": expected word and " + std::to_string(dim) + " values");
    }
    Vec v(dim);
    for (long long d = 0; d < dim; ++d) v(d) = parse_double(cols[static_cast<std::size_t>(d + 1)]);
    auto f = freq.find(cols[0]);
    vocab.add(cols[0], f == freq.end() ? 1 : std::max<std::uint64_t>(1, f->second));
    vectors.push_back(std::move(v));
  }
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (!t.empty() && t.front() != '#') throw Error(path + ": unexpected trailing content");
  }
  return EmbeddingSpace(std::move(vocab), std::move(vectors), static_cast<int>(dim));
}

std::vector<std::vector<std::string>> read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus " + path);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto toks = split_ws(line);
    if (!toks.empty()) out.push_back(std::move(toks));
  }
  return out;
}

}  // namespace svo
