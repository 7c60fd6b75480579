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

#include "svo/training_data.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>

#include "svo/kernels.hpp"

namespace svo {

namespace fs = std::filesystem;

std::vector<LabeledTriple> VerbTrainingSet::all() const {
  std::vector<LabeledTriple> out = positives;
  out.insert(out.end(), negatives.begin(), negatives.end());
  return out;
}

std::vector<SVOTriple> read_triples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open triples file " + path);
  std::vector<SVOTriple> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || line.front() == '#') continue;
    const auto cols = split(line, '\t');
    const std::string where = path + ":" + std::to_string(lineno);
    if (cols.size() != 4) throw Error(where + ": expected 4 tab-separated columns");
    SVOTriple t{cols[0], cols[1], cols[2], 0};
    if (t.subject.empty() || t.verb.empty() || t.object.empty()) {
      throw Error(where + ": empty word");
    }
    const auto count = parse_int(cols[3]);
    if (count < 1) throw Error(where + ": triple count must be >= 1");
    t.count = static_cast<std::uint64_t>(count);
    out.push_back(std::move(t));
  }
  return out;
}

TriplesByVerb select_positives(std::span<const SVOTriple> triples, const Vocabulary& vocab,
                               std::uint64_t min_noun_freq, std::size_t top_n) {
  if (triples.empty()) throw Error("no triples");
  auto freq_of = [&](const std::string& w) -> std::uint64_t {
    auto i = vocab.find(w);
    return i ? vocab.frequency(*i) : 0;
  };

  std::map<std::string, std::map<std::pair<std::string, std::string>, std::uint64_t>> merged;
  std::set<std::string> verbs;
  for (const auto& t : triples) {
    verbs.insert(t.verb);
    if (freq_of(t.subject) < min_noun_freq || freq_of(t.object) < min_noun_freq) continue;
    merged[t.verb][{t.subject, t.object}] += t.count;
  }

  TriplesByVerb out;
  for (const auto& verb : verbs) {
    auto it = merged.find(verb);
    if (it == merged.end()) {
      warn("verb '" + verb + "' has no triples passing the noun frequency filter; excluded");
      continue;
    }
    std::vector<SVOTriple> list;
    for (const auto& [so, count] : it->second) list.push_back({so.first, verb, so.second, count});
    // Map order is already (subject, object); stable sort keeps it for ties.
    std::stable_sort(list.begin(), list.end(),
                     [](const SVOTriple& a, const SVOTriple& b) { return a.count > b.count; });
    if (list.size() > top_n) list.resize(top_n);
    out.emplace(verb, std::move(list));
  }
  return out;
}

std::vector<std::string> dissimilar_candidates(const std::string& noun, const Vec& role_centroid,
                                               const EmbeddingSpace& space,
                                               std::span<const std::string> nouns,
                                               double freq_band) {
  const auto& vocab = space.vocabulary();
  const double f = static_cast<double>(vocab.frequency(noun));
  const Vec target = 0.5 * (space.vector_of(noun) + role_centroid);

  std::vector<std::size_t> pool;
  if (nouns.empty()) {
    pool.resize(vocab.size());
    std::iota(pool.begin(), pool.end(), 0);
  } else {
    for (const auto& w : nouns) {
      if (auto i = vocab.find(w)) pool.push_back(*i);
    }
  }

  // Tier 0 is the first non-empty band; each further doubling (up to three
  // in total) appends the newly admitted nouns, so collision fallbacks can
  // continue past an exhausted band.
  std::vector<std::string> out;
  std::vector<bool> taken(vocab.size(), false);
  double tol = freq_band;
  for (int attempt = 0; attempt <= 3; ++attempt, tol *= 2.0) {
    const double lo = f / (1.0 + tol);
    const double hi = f * (1.0 + tol);
    std::vector<std::size_t> band;
    for (std::size_t i : pool) {
      if (taken[i] || vocab.word(i) == noun) continue;
      const auto fi = static_cast<double>(vocab.frequency(i));
      if (fi >= lo && fi <= hi) band.push_back(i);
    }
    if (band.empty()) continue;

    const auto cos = kernels::parallel::cosine_scores(target, space.vectors(), band);
    std::vector<std::size_t> order(band.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (cos[a] != cos[b]) return cos[a] < cos[b];
      return vocab.word(band[a]) < vocab.word(band[b]);
    });
    for (std::size_t o : order) {
      out.push_back(vocab.word(band[o]));
      taken[band[o]] = true;
    }
  }
  if (!out.empty()) return out;
  throw Error("no frequency-matched candidate for '" + noun + "'");
}

std::string dissimilar_noun(const std::string& noun, const Vec& role_centroid,
                            const EmbeddingSpace& space, std::span<const std::string> nouns,
                            double freq_band) {
  return dissimilar_candidates(noun, role_centroid, space, nouns, freq_band).front();
}

std::vector<LabeledTriple> generate_negatives(std::span<const SVOTriple> positives,
                                              const EmbeddingSpace& space,
                                              const NegativeOptions& opts) {
  if (positives.empty()) throw Error("no positives to generate negatives from");

  Vec subj_centroid = Vec::Zero(space.dim());
  Vec obj_centroid = Vec::Zero(space.dim());
  for (const auto& p : positives) {
    subj_centroid += space.vector_of(p.subject);
    obj_centroid += space.vector_of(p.object);
  }
  subj_centroid /= static_cast<double>(positives.size());
  obj_centroid /= static_cast<double>(positives.size());

  auto attested = opts.attested;
  if (attested.empty()) {
    for (const auto& p : positives) attested.emplace(p.subject, p.verb, p.object);
  }
  auto is_attested = [&](const std::string& s, const std::string& v, const std::string& o) {
    return attested.count({s, v, o}) > 0;
  };

  using Ranked = std::optional<std::vector<std::string>>;
  std::map<std::string, Ranked> subj_cache;
  std::map<std::string, Ranked> obj_cache;
  auto ranked = [&](std::map<std::string, Ranked>& cache, const std::string& noun,
                    const Vec& centroid) -> const Ranked& {
    auto it = cache.find(noun);
    if (it != cache.end()) return it->second;
    Ranked r;
    try {
      r = dissimilar_candidates(noun, centroid, space, opts.nouns, opts.freq_band);
    } catch (const Error& e) {
      warn(e.what());
    }
    return cache.emplace(noun, std::move(r)).first->second;
  };

  std::vector<LabeledTriple> pool;
  pool.reserve(3 * positives.size());
  for (const auto& p : positives) {
    const Ranked& subs = ranked(subj_cache, p.subject, subj_centroid);
    const Ranked& objs = ranked(obj_cache, p.object, obj_centroid);
    const std::string tag = p.subject + " " + p.verb + " " + p.object;

    std::optional<std::string> s_sub;
    if (subs) {
      for (const auto& s : *subs) {
        if (!is_attested(s, p.verb, p.object)) {
          s_sub = s;
          break;
        }
      }
    }
    std::optional<std::string> o_sub;
    if (objs) {
      for (const auto& o : *objs) {
        if (!is_attested(p.subject, p.verb, o)) {
          o_sub = o;
          break;
        }
      }
    }
    std::optional<std::pair<std::string, std::string>> both;
    if (subs && objs) {
      for (const auto& s : *subs) {
        for (const auto& o : *objs) {
          if (!is_attested(s, p.verb, o)) {
            both.emplace(s, o);
            break;
          }
        }
        if (both) break;
      }
    }

    if (s_sub) pool.push_back({{*s_sub, p.verb, p.object, 1}, 0});
    else warn("no subject substitute for '" + tag + "'; negative skipped");
    if (o_sub) pool.push_back({{p.subject, p.verb, *o_sub, 1}, 0});
    else warn("no object substitute for '" + tag + "'; negative skipped");
    if (both) pool.push_back({{both->first, p.verb, both->second, 1}, 0});
    else warn("no subject+object substitute for '" + tag + "'; negative skipped");
  }
  return pool;
}

std::vector<LabeledTriple> sample_negatives(std::span<const LabeledTriple> pool, std::size_t n,
                                            std::uint64_t seed) {
  if (pool.empty()) throw Error("empty negative pool");
  const std::size_t take = std::min(n, pool.size());
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  // Partial Fisher-Yates: the first `take` slots are the sample.
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + rng.below(idx.size() - i);
    std::swap(idx[i], idx[j]);
  }
  std::vector<LabeledTriple> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(pool[idx[i]]);
  return out;
}

Split split_validation(std::span<const LabeledTriple> data, double fraction, std::uint64_t seed) {
  if (data.size() < 10) throw Error("too few training examples");
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error("validation fraction must lie in (0, 1), got " + format_double(fraction));
  }
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < data.size(); ++i) (data[i].label == 1 ? pos : neg).push_back(i);

  const auto n = static_cast<double>(data.size());
  const auto n_val = static_cast<std::size_t>(std::lround(fraction * n));
  auto n_pos = static_cast<std::size_t>(
      std::lround(static_cast<double>(n_val) * static_cast<double>(pos.size()) / n));
  n_pos = std::min(n_pos, pos.size());
  const std::size_t n_neg = std::min(n_val - n_pos, neg.size());

  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);

  Split out;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    (i < n_pos ? out.validation : out.train).push_back(data[pos[i]]);
  }
  for (std::size_t i = 0; i < neg.size(); ++i) {
    (i < n_neg ? out.validation : out.train).push_back(data[neg[i]]);
  }
  return out;
}

VerbTrainingSet build_training_set(const std::string& verb, std::span<const SVOTriple> positives,
                                   const EmbeddingSpace& space, const NegativeOptions& neg_opts,
                                   std::size_t neg_n, std::uint64_t seed) {
  VerbTrainingSet set;
  set.verb = verb;
  set.seed = seed;
  for (const auto& p : positives) {
    if (p.verb != verb) throw Error("positive '" + p.subject + " " + p.verb + " " + p.object +
                                    "' does not belong to verb '" + verb + "'");
    set.positives.push_back({p, 1});
  }
  const auto pool = generate_negatives(positives, space, neg_opts);
  set.pool_size = pool.size();
  if (!pool.empty()) set.negatives = sample_negatives(pool, neg_n, seed);
  return set;
}

void write_training_set(const VerbTrainingSet& set, const std::string& dir,
                        const std::string& metadata) {
  fs::create_directories(dir);
  const fs::path base = fs::path(dir) / set.verb;
  std::ofstream out(base.string() + ".tsv");
  if (!out) throw Error("cannot write " + base.string() + ".tsv");
  for (const auto& group : {&set.positives, &set.negatives}) {
    for (const auto& lt : *group) {
      out << lt.triple.subject << '\t' << lt.triple.verb << '\t' << lt.triple.object << '\t'
          << lt.label << '\n';
    }
  }
  std::ofstream meta(base.string() + ".meta");
  meta << "verb=" << set.verb << " seed=" << set.seed << " positives=" << set.positives.size()
       << " pool=" << set.pool_size << " negatives=" << set.negatives.size();
  if (!metadata.empty()) meta << ' ' << metadata;
  meta << '\n';
}

VerbTrainingSet read_training_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open training set " + path);
  VerbTrainingSet set;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || line.front() == '#') continue;
    const auto cols = split(line, '\t');
    const std::string where = path + ":" + std::to_string(lineno);
    if (cols.size() != 4) throw Error(where + ": expected 4 tab-separated columns");
    const auto label = parse_int(cols[3]);
    if (label != 0 && label != 1) throw Error(where + ": label must be 0 or 1");
    if (set.verb.empty()) set.verb = cols[1];
    if (cols[1] != set.verb) throw Error(where + ": mixed verbs in one training set");
    LabeledTriple lt{{cols[0], cols[1], cols[2], 1}, static_cast<int>(label)};
    (label == 1 ? set.positives : set.negatives).push_back(std::move(lt));
  }
  if (set.verb.empty()) throw Error(path + ": empty training set");

  fs::path meta = fs::path(path).replace_extension(".meta");
  if (fs::exists(meta)) {
    std::ifstream min(meta);
    std::string m;
    std::getline(min, m);
    for (const auto& kv : split_ws(m)) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) continue;
      const auto key = kv.substr(0, eq);
      const auto val = kv.substr(eq + 1);
      if (key == "seed") set.seed = std::stoull(val);
      if (key == "pool") set.pool_size = std::stoull(val);
    }
  }
  return set;
}

std::vector<VerbTrainingSet> read_training_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tsv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<VerbTrainingSet> out;
  for (const auto& f : files) out.push_back(read_training_set(f.string()));
  return out;
}

}  // namespace svo
