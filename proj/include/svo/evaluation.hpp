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

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svo/composition.hpp"
#include "svo/embedding_space.hpp"
#include "svo/kernels.hpp"
#include "svo/training_data.hpp"
#include "svo/verb_learning.hpp"

namespace svo {

struct EvalPair {
  std::string id;
  SVOTriple left;
  SVOTriple right;
  std::vector<double> ratings;

  double gold_mean() const;
};

enum class DatasetFormat { gs2011, ks2013, canonical };
DatasetFormat parse_format(std::string_view s);
std::string_view to_string(DatasetFormat f);

struct RatingScale {
  double min = 1.0;
  double max = 7.0;
};

/// Groups annotator rows into pairs, in order of first appearance.
std::vector<EvalPair> load_dataset(const std::string& path, DatasetFormat format,
                                   RatingScale scale = {});

struct PairScores {
  std::vector<std::pair<std::string, double>> scores;  // dataset order
  std::vector<std::string> skipped;
};

using VerbMatrices = std::map<std::string, VerbMatrix>;

/// Composes both sides of every pair and measures their similarity. Pairs
/// with an OOV word or a missing verb matrix are skipped.
PairScores score_pairs(std::span<const EvalPair> pairs, const EmbeddingSpace& space,
                       const VerbMatrices& verbs, CompMethod method,
                       const CompositionOptions& opts = {},
                       kernels::Exec exec = kernels::Exec::parallel);

/// Average ranks (1-based), ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> xs);

/// Pearson correlation of average ranks.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct PairScore {
  std::string id;
  double system = 0.0;
  double gold_mean = 0.0;
  double norm_system = 0.0;
  double norm_gold = 0.0;
  double msqe = 0.0;
};

struct EvalConfig {
  std::string regime;
  std::string composition;
  int k = 0;
};

struct EvalResult {
  EvalConfig config;
  std::vector<PairScore> per_pair;
  double rho = 0.0;
  std::vector<std::string> skipped;
};

struct EvaluateOptions {
  CompositionOptions composition;
  /// Correlate against every annotator rating instead of per-pair means.
  bool per_annotator = false;
  kernels::Exec exec = kernels::Exec::parallel;
};

EvalResult evaluate(std::span<const EvalPair> dataset, const EmbeddingSpace& space,
                    const VerbMatrices& verbs, CompMethod method, const EvalConfig& config,
                    const EvaluateOptions& opts = {});

/// Maps min to 0 and max to 1. Throws when all values are equal.
std::vector<double> min_max_normalize(std::span<const double> xs, std::string_view what);

struct MsqeRow {
  std::string id;
  double norm_gold = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  double error_a = 0.0;
  double error_b = 0.0;
  double diff = 0.0;  // error_a - error_b
};

/// Per-pair squared error of both results against gold, sorted by
/// error_a - error_b (most favourable to A first).
std::vector<MsqeRow> msqe_analysis(const EvalResult& a, const EvalResult& b);

// Result row at `path`, per-pair detail at `path + ".pairs"`.
void write_result(const EvalResult& r, const std::string& path,
                  const std::vector<std::string>& metadata = {});
EvalResult read_result(const std::string& path);
void write_msqe_report(std::span<const MsqeRow> rows, const std::string& path);

}  // namespace svo
