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
#include <optional>
#include <string>
#include <vector>

#include "svo/config.hpp"
#include "svo/embedding_space.hpp"
#include "svo/evaluation.hpp"
#include "svo/training_data.hpp"
#include "svo/verb_learning.hpp"

namespace svo {

/// A failure inside one pipeline stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message)
      : Error("stage '" + stage + "' failed: " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

SvdScaling parse_scaling(std::string_view s);

/// Co-occurrence counts, t-test weighting and row normalization.
struct WeightedSpace {
  Vocabulary rows;
  SparseRowMatrix matrix;
};
WeightedSpace weight_corpus(const std::vector<std::vector<std::string>>& corpus,
                            const CooccurrenceOptions& opts);
EmbeddingSpace build_space(const std::vector<std::vector<std::string>>& corpus,
                           const CooccurrenceOptions& opts, int k, SvdScaling scaling);

/// Positive selection plus negative generation for every verb in `triples`.
/// Verb seeds are derived from `master_seed` and the verb name.
std::vector<VerbTrainingSet> make_training_sets(std::span<const SVOTriple> triples,
                                                const EmbeddingSpace& space,
                                                const DataOptions& opts,
                                                std::uint64_t master_seed);

/// Trains every set (in parallel across verbs); output order follows `sets`.
/// Each verb's seed is derived from `master_seed`, the regime and the verb.
std::vector<VerbMatrix> train_all(std::span<const VerbTrainingSet> sets,
                                  const EmbeddingSpace& space, Regime regime,
                                  const RegressionConfig& base, std::uint64_t master_seed);

struct GridRow {
  std::string regime;
  std::string composition;
};
struct GridCol {
  std::string dataset;
  int k;
};

/// Rows are regime x composition, columns dataset x K. Missing cells
/// (degenerate rankings) are nullopt.
struct ResultGrid {
  std::vector<GridRow> rows;
  std::vector<GridCol> cols;
  std::vector<std::vector<std::optional<double>>> cells;

  std::string to_tsv(const std::vector<std::string>& header = {}) const;
  std::string to_table() const;
};

struct StageStats {
  int hits = 0;
  int misses = 0;
};

struct PipelineReport {
  ResultGrid grid;
  std::map<std::string, StageStats> stages;
  std::string grid_path;
};

/// Runs space -> data -> train -> evaluate for every configured cell,
/// reusing stage outputs under `config.output` whose input hash matches.
PipelineReport run_pipeline(const PipelineConfig& config);

}  // namespace svo
