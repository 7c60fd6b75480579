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
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "svo/embedding_space.hpp"

namespace svo {

struct SVOTriple {
  std::string subject;
  std::string verb;
  std::string object;
  std::uint64_t count = 1;

  auto key() const { return std::tie(subject, verb, object); }
  bool same_words(const SVOTriple& o) const { return key() == o.key(); }
};

struct LabeledTriple {
  SVOTriple triple;
  int label = 0;  // 1 attested, 0 generated negative
};

struct VerbTrainingSet {
  std::string verb;
  std::vector<LabeledTriple> positives;
  std::vector<LabeledTriple> negatives;
  std::uint64_t seed = 0;
  std::size_t pool_size = 0;

  std::vector<LabeledTriple> all() const;
};

using TriplesByVerb = std::map<std::string, std::vector<SVOTriple>>;

/// TSV: subject, verb, object, count.
std::vector<SVOTriple> read_triples(const std::string& path);

/// Per verb: keep triples whose nouns both reach `min_noun_freq`, merge
/// duplicates, rank by count (ties by subject then object), keep `top_n`.
TriplesByVerb select_positives(std::span<const SVOTriple> triples, const Vocabulary& vocab,
                               std::uint64_t min_noun_freq = 100, std::size_t top_n = 1000);

/// Candidate nouns for substitution, ranked by ascending cosine to the
/// midpoint of `noun` and `role_centroid` (ties by word). Candidates come
/// from a frequency band around `noun`; the tolerance doubles (at most three
/// times) until the band is non-empty. Nouns admitted only by later
/// doublings follow as fallback tiers. Throws when even the widest band is
/// empty.
std::vector<std::string> dissimilar_candidates(const std::string& noun, const Vec& role_centroid,
                                               const EmbeddingSpace& space,
                                               std::span<const std::string> nouns,
                                               double freq_band = 0.5);

/// First entry of dissimilar_candidates.
std::string dissimilar_noun(const std::string& noun, const Vec& role_centroid,
                            const EmbeddingSpace& space, std::span<const std::string> nouns,
                            double freq_band = 0.5);

struct NegativeOptions {
  /// Substitution candidates; every space word when empty.
  std::vector<std::string> nouns;
  double freq_band = 0.5;
  /// Attested triples (any verb) that a negative must not reproduce.
  /// When empty the positives themselves are used.
  std::set<std::tuple<std::string, std::string, std::string>> attested;
};

/// Three label-0 triples per positive: subject swapped, object swapped, both.
std::vector<LabeledTriple> generate_negatives(std::span<const SVOTriple> positives,
                                              const EmbeddingSpace& space,
                                              const NegativeOptions& opts);

/// Uniform sample without replacement of min(n, |pool|) items.
std::vector<LabeledTriple> sample_negatives(std::span<const LabeledTriple> pool, std::size_t n,
                                            std::uint64_t seed);

struct Split {
  std::vector<LabeledTriple> train;
  std::vector<LabeledTriple> validation;
};

/// Seeded, label-stratified hold-out split.
Split split_validation(std::span<const LabeledTriple> data, double fraction, std::uint64_t seed);

struct DataOptions {
  std::uint64_t min_noun_freq = 100;
  std::size_t top_n = 1000;
  std::size_t neg_n = 1000;
  double freq_band = 0.5;
};

VerbTrainingSet build_training_set(const std::string& verb, std::span<const SVOTriple> positives,
                                   const EmbeddingSpace& space, const NegativeOptions& neg_opts,
                                   std::size_t neg_n, std::uint64_t seed);

// "<dir>/<verb>.tsv" with subject, verb, object, label rows, and a
// one-line "<dir>/<verb>.meta" sidecar.
void write_training_set(const VerbTrainingSet& set, const std::string& dir,
                        const std::string& metadata);
VerbTrainingSet read_training_set(const std::string& path);
/// All "*.tsv" training sets in `dir`, sorted by verb.
std::vector<VerbTrainingSet> read_training_dir(const std::string& dir);

}  // namespace svo
