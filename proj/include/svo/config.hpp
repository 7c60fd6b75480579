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
#include <string>
#include <vector>

#include "svo/embedding_space.hpp"
#include "svo/training_data.hpp"
#include "svo/verb_learning.hpp"

namespace svo {

struct DatasetSpec {
  std::string name;
  std::string format;  // gs2011 | ks2013 | canonical
  std::string path;
};

/// Everything one experiment needs. Paths are resolved against the config
/// file's directory when parsed from disk.
struct PipelineConfig {
  std::string corpus;
  int window = 5;
  std::uint64_t min_count = 1;
  std::size_t max_contexts = 10000;
  std::string svd_scaling = "us";
  std::vector<int> dims{20, 300};

  std::string triples;
  DataOptions data;

  std::vector<std::string> regimes{"dist", "reg", "reg+"};
  RegressionConfig regression;

  std::vector<std::string> compositions{"add", "mult", "co", "cs", "f+", "re", "vo"};
  std::vector<DatasetSpec> datasets;
  double scale_min = 1.0;
  double scale_max = 7.0;
  bool normalize_inputs = false;
  bool normalized_frobenius = false;
  bool per_annotator = false;

  std::uint64_t seed = 1;
  std::string output = "out";

  /// Stable hash of every setting that influences results.
  std::uint64_t hash() const;
};

/// `key = value` lines; '#' starts a comment. Throws Error on unknown keys
/// or unparseable values, with the line number.
PipelineConfig parse_config(const std::string& path);
PipelineConfig parse_config_text(const std::string& text, const std::string& base_dir = ".");

/// Empty when the config is usable. Never mutates anything.
std::vector<std::string> validate_config(const PipelineConfig& config);

}  // namespace svo
