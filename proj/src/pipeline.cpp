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

#include "svo/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace svo {

namespace fs = std::filesystem;

SvdScaling parse_scaling(std::string_view s) {
  if (s == "us") return SvdScaling::us;
  if (s == "u") return SvdScaling::u;
  throw Error("unknown svd scaling '" + std::string(s) + "' (valid: us, u)");
}

WeightedSpace weight_corpus(const std::vector<std::vector<std::string>>& corpus,
                            const CooccurrenceOptions& opts) {
  CooccurrenceMatrix counts = build_cooccurrence(corpus, opts);
  SparseRowMatrix weighted = normalize_rows(ttest_weight(counts));
  return {std::move(counts.rows), std::move(weighted)};
}

EmbeddingSpace build_space(const std::vector<std::vector<std::string>>& corpus,
                           const CooccurrenceOptions& opts, int k, SvdScaling scaling) {
  const WeightedSpace w = weight_corpus(corpus, opts);
  return svd_reduce(w.matrix, w.rows, k, scaling);
}

std::vector<VerbTrainingSet> make_training_sets(std::span<const SVOTriple> triples,
                                                const EmbeddingSpace& space,
                                                const DataOptions& opts,
                                                std::uint64_t master_seed) {
  const TriplesByVerb positives =
      select_positives(triples, space.vocabulary(), opts.min_noun_freq, opts.top_n);

  NegativeOptions neg;
  neg.freq_band = opts.freq_band;
  std::set<std::string> nouns;
  for (const auto& t : triples) {
    neg.attested.emplace(t.subject, t.verb, t.object);
    if (space.contains(t.subject)) nouns.insert(t.subject);
    if (space.contains(t.object)) nouns.insert(t.object);
  }
  neg.nouns.assign(nouns.begin(), nouns.end());

  std::vector<std::pair<std::string, const std::vector<SVOTriple>*>> verbs;
  for (const auto& [verb, list] : positives) verbs.emplace_back(verb, &list);

  std::vector<VerbTrainingSet> out(verbs.size());
  std::vector<std::string> errors(verbs.size());
  const auto n = static_cast<long>(verbs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    try {
      out[u] = build_training_set(verbs[u].first, *verbs[u].second, space, neg, opts.neg_n,
                                  derive_seed(master_seed, "make-data", verbs[u].first));
    } catch (const std::exception& e) {
      errors[u] = e.what();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) throw Error("verb '" + verbs[i].first + "': " + errors[i]);
  }
  return out;
}

std::vector<VerbMatrix> train_all(std::span<const VerbTrainingSet> sets,
                                  const EmbeddingSpace& space, Regime regime,
                                  const RegressionConfig& base, std::uint64_t master_seed) {
  std::vector<VerbMatrix> out(sets.size());
  std::vector<std::string> errors(sets.size());
  const std::string stage = "train/" + std::string(to_string(regime));
  const auto n = static_cast<long>(sets.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    RegressionConfig cfg = base;
    cfg.seed = derive_seed(master_seed, stage, sets[u].verb);
    try {
      out[u] = train_verb(sets[u], space, regime, cfg);
    } catch (const std::exception& e) {
      errors[u] = e.what();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) throw Error("verb '" + sets[i].verb + "': " + errors[i]);
  }
  return out;
}

std::string ResultGrid::to_tsv(const std::vector<std::string>& header) const {
  std::ostringstream s;
  for (const auto& h : header) s << "# " << h << '\n';
  s << "regime\tcomposition";
  for (const auto& c : cols) s << '\t' << c.dataset << ":K=" << c.k;
  s << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    s << rows[r].regime << '\t' << rows[r].composition;
    for (const auto& cell : cells[r]) s << '\t' << (cell ? format_double(*cell) : "NA");
    s << '\n';
  }
  return s.str();
}

std::string ResultGrid::to_table() const {
  std::vector<std::string> head{"METHOD", "COMP"};
  for (const auto& c : cols) head.push_back(c.dataset + " K=" + std::to_string(c.k));
  std::vector<std::vector<std::string>> body;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<std::string> line{rows[r].regime, rows[r].composition};
    for (const auto& cell : cells[r]) {
      if (!cell) {
        line.emplace_back("NA");
        continue;
      }
      std::ostringstream v;
      v << std::fixed << std::setprecision(3) << *cell;
      line.push_back(v.str());
    }
    body.push_back(std::move(line));
  }
  std::vector<std::size_t> width(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) width[i] = head[i].size();
  for (const auto& line : body) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::ostringstream s;
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) s << "  ";
      if (i < 2) s << std::left << std::setw(static_cast<int>(width[i])) << line[i];
      else s << std::right << std::setw(static_cast<int>(width[i])) << line[i];
    }
    s << '\n';
  };
  emit(head);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  s << std::string(total - 2, '-') << '\n';
  for (const auto& line : body) emit(line);
  return s.str();
}

namespace {

std::uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::uint64_t h = fnv1a("");
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    h = fnv1a(std::string_view(buf, static_cast<std::size_t>(in.gcount())), h);
  }
  return h;
}

class KeyBuilder {
 public:
  explicit KeyBuilder(std::string_view stage) : h_(fnv1a(stage)) {}
  template <class T>
  KeyBuilder& add(const T& value) {
    std::ostringstream s;
    s << '|' << value;
    h_ = fnv1a(s.str(), h_);
    return *this;
  }
  KeyBuilder& add(double value) { return add(format_double(value)); }
  std::uint64_t done() const { return h_; }

 private:
  std::uint64_t h_;
};

// A stage directory is complete once its marker exists.
bool stage_done(const fs::path& dir) { return fs::exists(dir / "DONE"); }
void mark_done(const fs::path& dir) { std::ofstream(dir / "DONE") << "ok\n"; }

template <class F>
auto run_stage(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

PipelineReport run_pipeline(const PipelineConfig& config) {
  const auto violations = validate_config(config);
  if (!violations.empty()) throw Error("invalid config: " + violations.front());

  const std::uint64_t config_hash = config.hash();
  const std::string stamp = "config_hash=" + hex64(config_hash) +
                            " master_seed=" + std::to_string(config.seed);
  const fs::path out = config.output;
  fs::create_directories(out);

  PipelineReport report;
  for (const char* s : {"space", "data", "train", "evaluate"}) report.stages[s] = {};

  const std::uint64_t corpus_hash = run_stage("space", [&] { return hash_file(config.corpus); });
  const std::uint64_t triples_hash = run_stage("data", [&] { return hash_file(config.triples); });
  const SvdScaling scaling = parse_scaling(config.svd_scaling);
  const CooccurrenceOptions cooc{config.window, config.min_count, config.max_contexts};

  std::optional<WeightedSpace> weighted;  // built on the first space cache miss
  std::optional<std::vector<SVOTriple>> triples;

  struct DatasetData {
    std::vector<EvalPair> pairs;
    std::uint64_t hash;
  };
  std::vector<DatasetData> datasets;
  for (const auto& d : config.datasets) {
    datasets.push_back(run_stage("evaluate", [&] {
      return DatasetData{load_dataset(d.path, parse_format(d.format),
                                      {config.scale_min, config.scale_max}),
                         hash_file(d.path)};
    }));
  }

  for (const auto& regime : config.regimes) {
    for (const auto& comp : config.compositions) report.grid.rows.push_back({regime, comp});
  }
  for (const auto& d : config.datasets) {
    for (int k : config.dims) report.grid.cols.push_back({d.name, k});
  }
  report.grid.cells.assign(report.grid.rows.size(),
                           std::vector<std::optional<double>>(report.grid.cols.size()));

  const CompositionOptions comp_opts{config.normalize_inputs, config.normalized_frobenius};

  for (std::size_t ki = 0; ki < config.dims.size(); ++ki) {
    const int k = config.dims[ki];

    // space
    const std::uint64_t space_key = KeyBuilder("space")
                                        .add(corpus_hash)
                                        .add(config.window)
                                        .add(config.min_count)
                                        .add(config.max_contexts)
                                        .add(config.svd_scaling)
                                        .add(k)
                                        .done();
    const fs::path space_dir = out / "space" / ("K" + std::to_string(k) + "-" + hex64(space_key));
    const std::string space_path = (space_dir / "space.txt").string();
    const EmbeddingSpace space = run_stage("space", [&] {
      if (stage_done(space_dir)) {
        ++report.stages["space"].hits;
        return load_space(space_path);
      }
      ++report.stages["space"].misses;
      if (!weighted) weighted = weight_corpus(read_corpus(config.corpus), cooc);
      EmbeddingSpace built = svd_reduce(weighted->matrix, weighted->rows, k, scaling);
      fs::create_directories(space_dir);
      save_space(built, space_path, {stamp});
      mark_done(space_dir);
      // Reload so cold and cached runs see identical (round-tripped) values.
      return load_space(space_path);
    });

    // data
    const std::uint64_t data_key = KeyBuilder("data")
                                       .add(space_key)
                                       .add(triples_hash)
                                       .add(config.data.min_noun_freq)
                                       .add(config.data.top_n)
                                       .add(config.data.neg_n)
                                       .add(config.data.freq_band)
                                       .add(config.seed)
                                       .done();
    const fs::path data_dir = out / "data" / ("K" + std::to_string(k) + "-" + hex64(data_key));
    const std::vector<VerbTrainingSet> sets = run_stage("data", [&] {
      if (stage_done(data_dir)) {
        ++report.stages["data"].hits;
        return read_training_dir(data_dir.string());
      }
      ++report.stages["data"].misses;
      if (!triples) triples = read_triples(config.triples);
      auto built = make_training_sets(*triples, space, config.data, config.seed);
      fs::create_directories(data_dir);
      for (const auto& s : built) write_training_set(s, data_dir.string(), stamp);
      mark_done(data_dir);
      return read_training_dir(data_dir.string());
    });

    for (std::size_t ri = 0; ri < config.regimes.size(); ++ri) {
      const Regime regime = parse_regime(config.regimes[ri]);
      const auto& rc = config.regression;
      KeyBuilder tk("train");
      tk.add(data_key).add(std::string(to_string(regime))).add(config.seed);
      if (regime != Regime::dist) {
        tk.add(rc.lambda).add(rc.rho).add(rc.epsilon).add(rc.max_epochs).add(rc.patience)
            .add(rc.batch).add(std::string(to_string(rc.loss))).add(rc.validation_fraction);
      }
      const std::uint64_t train_key = tk.done();
      const std::string regime_name(to_string(regime));
      const fs::path train_dir =
          out / "train" /
          ((regime == Regime::reg_plus ? std::string("regplus") : regime_name) + "-K" +
           std::to_string(k) + "-" + hex64(train_key));

      const VerbMatrices verbs = run_stage("train", [&] {
        if (stage_done(train_dir)) {
          ++report.stages["train"].hits;
          return load_verb_dir(train_dir.string());
        }
        ++report.stages["train"].misses;
        const auto trained = train_all(sets, space, regime, rc, config.seed);
        fs::create_directories(train_dir);
        for (const auto& vm : trained) {
          save_verb_matrix(vm, (train_dir / (vm.verb + ".mat")).string(), {stamp});
        }
        mark_done(train_dir);
        return load_verb_dir(train_dir.string());
      });

      for (std::size_t di = 0; di < datasets.size(); ++di) {
        for (std::size_t ci = 0; ci < config.compositions.size(); ++ci) {
          const std::string& comp_key = config.compositions[ci];
          const CompMethod method = parse_comp(comp_key);
          const std::uint64_t eval_key =
              KeyBuilder("evaluate")
                  .add(datasets[di].hash)
                  .add(config.datasets[di].format)
                  .add(config.scale_min)
                  .add(config.scale_max)
                  .add(uses_verb_matrix(method) ? train_key : space_key)
                  .add(comp_key)
                  .add(config.normalize_inputs)
                  .add(config.normalized_frobenius)
                  .add(config.per_annotator)
                  .done();
          const fs::path eval_path = out / "eval" / (hex64(eval_key) + ".tsv");
          const fs::path na_path = out / "eval" / (hex64(eval_key) + ".na");

          const std::optional<double> rho = run_stage("evaluate", [&]() -> std::optional<double> {
            if (fs::exists(na_path)) {
              ++report.stages["evaluate"].hits;
              return std::nullopt;
            }
            if (fs::exists(eval_path.string() + ".pairs") && fs::exists(eval_path)) {
              ++report.stages["evaluate"].hits;
              return read_result(eval_path.string()).rho;
            }
            ++report.stages["evaluate"].misses;
            fs::create_directories(out / "eval");
            EvalConfig ec{regime_name, comp_key, k};
            try {
              EvaluateOptions eo{comp_opts, config.per_annotator, kernels::Exec::parallel};
              const EvalResult r = evaluate(datasets[di].pairs, space, verbs, method, ec, eo);
              if (!r.skipped.empty()) {
                warn(config.datasets[di].name + " " + regime_name + "/" + comp_key + " K=" +
                     std::to_string(k) + ": " + std::to_string(r.skipped.size()) +
                     " pairs skipped");
              }
              write_result(r, eval_path.string(), {stamp});
              return read_result(eval_path.string()).rho;
            } catch (const Error& e) {
              const std::string what = e.what();
              if (what.find("degenerate ranking") == std::string::npos &&
                  what.find("no scorable pairs") == std::string::npos) {
                throw;
              }
              warn(config.datasets[di].name + " " + regime_name + "/" + comp_key + " K=" +
                   std::to_string(k) + ": " + what + "; cell reported as NA");
              std::ofstream(na_path) << stamp << '\n' << what << '\n';
              return std::nullopt;
            }
          });

          const std::size_t row = ri * config.compositions.size() + ci;
          const std::size_t col = di * config.dims.size() + ki;
          report.grid.cells[row][col] = rho;
        }
      }
    }
  }

  const std::vector<std::string> header{stamp};
  report.grid_path = (out / "results.tsv").string();
  std::ofstream(report.grid_path) << report.grid.to_tsv(header);
  std::ofstream(out / "results.txt") << "# " << stamp << '\n' << report.grid.to_table();
  return report;
}

}  // namespace svo
