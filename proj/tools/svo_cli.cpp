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

// svo: build spaces, make training data, train verb matrices, evaluate and
// analyze, or run the whole grid from one config file.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "svo/composition.hpp"
#include "svo/config.hpp"
#include "svo/embedding_space.hpp"
#include "svo/evaluation.hpp"
#include "svo/pipeline.hpp"
#include "svo/training_data.hpp"
#include "svo/verb_learning.hpp"

namespace fs = std::filesystem;
using namespace svo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitStage = 2;

struct BuildSpaceArgs {
  std::string corpus, out, scaling = "us";
  int window = 5, dim = 20;
  std::uint64_t min_count = 1;
  std::size_t max_contexts = 10000;
};

struct MakeDataArgs {
  std::string triples, space, out;
  DataOptions data;
  std::uint64_t seed = 1;
};

struct TrainArgs {
  std::string regime, data, space, out, loss = "xent";
  RegressionConfig cfg;
  std::uint64_t seed = 1;
};

struct EvaluateArgs {
  std::string dataset, format = "canonical", space, verbs, comp, regime = "dist", out;
  double scale_min = 1.0, scale_max = 7.0;
  bool per_annotator = false, normalize_inputs = false, normalized_frobenius = false;
};

struct AnalyzeArgs {
  std::string a, b, out;
};

int cmd_build_space(const BuildSpaceArgs& a) {
  const auto corpus = read_corpus(a.corpus);
  const CooccurrenceOptions opts{a.window, a.min_count, a.max_contexts};
  const EmbeddingSpace space = build_space(corpus, opts, a.dim, parse_scaling(a.scaling));
  if (auto parent = fs::path(a.out).parent_path(); !parent.empty()) fs::create_directories(parent);
  save_space(space, a.out,
             {"window=" + std::to_string(a.window) + " min_count=" + std::to_string(a.min_count) +
              " max_contexts=" + std::to_string(a.max_contexts) + " scaling=" + a.scaling});
  std::cout << "wrote " << space.size() << " vectors (K=" << space.dim() << ") to " << a.out
            << '\n';
  return kExitOk;
}

int cmd_make_data(const MakeDataArgs& a) {
  const auto triples = read_triples(a.triples);
  const EmbeddingSpace space = load_space(a.space);
  const auto sets = make_training_sets(triples, space, a.data, a.seed);
  const std::string meta = "master_seed=" + std::to_string(a.seed) +
                           " min_noun_freq=" + std::to_string(a.data.min_noun_freq) +
                           " top_n=" + std::to_string(a.data.top_n) +
                           " neg_n=" + std::to_string(a.data.neg_n) +
                           " freq_band=" + format_double(a.data.freq_band);
  for (const auto& s : sets) {
    write_training_set(s, a.out, meta);
    std::cout << s.verb << ": " << s.positives.size() << " positives, " << s.negatives.size()
              << " negatives (pool " << s.pool_size << ")\n";
  }
  return kExitOk;
}

int cmd_train(TrainArgs a) {
  a.cfg.loss = parse_loss(a.loss);
  a.cfg.validate();
  const Regime regime = parse_regime(a.regime);
  const EmbeddingSpace space = load_space(a.space);
  const auto sets = read_training_dir(a.data);
  if (sets.empty()) throw Error("no training sets in " + a.data);
  const auto trained = train_all(sets, space, regime, a.cfg, a.seed);
  fs::create_directories(a.out);
  for (const auto& vm : trained) {
    save_verb_matrix(vm, (fs::path(a.out) / (vm.verb + ".mat")).string(),
                     {"master_seed=" + std::to_string(a.seed)});
    std::cout << vm.verb << " [" << to_string(vm.regime) << "]";
    if (regime != Regime::dist) {
      std::cout << " epochs=" << vm.meta.epochs_run << " best=" << vm.meta.best_epoch
                << " val_loss=" << vm.meta.validation_loss;
    }
    std::cout << '\n';
  }
  return kExitOk;
}

int cmd_evaluate(const EvaluateArgs& a) {
  const auto pairs = load_dataset(a.dataset, parse_format(a.format), {a.scale_min, a.scale_max});
  const EmbeddingSpace space = load_space(a.space);
  const CompMethod method = parse_comp(a.comp);
  VerbMatrices verbs;
  if (uses_verb_matrix(method)) verbs = load_verb_dir(a.verbs);
  EvaluateOptions opts;
  opts.composition = {a.normalize_inputs, a.normalized_frobenius};
  opts.per_annotator = a.per_annotator;
  const EvalResult r =
      evaluate(pairs, space, verbs, method, {a.regime, a.comp, space.dim()}, opts);
  std::cout << "regime\tcomposition\tK\trho\tn_pairs\tn_skipped\n"
            << r.config.regime << '\t' << r.config.composition << '\t' << r.config.k << '\t'
            << format_double(r.rho) << '\t' << r.per_pair.size() << '\t' << r.skipped.size()
            << '\n';
  if (!r.skipped.empty()) std::cerr << r.skipped.size() << " pairs skipped (out of vocabulary)\n";
  if (!a.out.empty()) write_result(r, a.out);
  return kExitOk;
}

int cmd_analyze(const AnalyzeArgs& a) {
  const auto rows = msqe_analysis(read_result(a.a), read_result(a.b));
  write_msqe_report(rows, a.out);
  std::cout << "wrote " << rows.size() << " pairs to " << a.out << '\n';
  return kExitOk;
}

int cmd_validate(const std::string& path) {
  const auto violations = validate_config(parse_config(path));
  if (violations.empty()) {
    std::cout << "ok\n";
    return kExitOk;
  }
  for (const auto& v : violations) std::cerr << "invalid: " << v << '\n';
  return kExitInvalid;
}

int cmd_run(const std::string& path) {
  const PipelineConfig cfg = parse_config(path);
  const auto violations = validate_config(cfg);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid: " << v << '\n';
    return kExitInvalid;
  }
  const PipelineReport report = run_pipeline(cfg);
  for (const auto& [stage, st] : report.stages) {
    std::cerr << stage << ": " << st.misses << " built, " << st.hits << " cached\n";
  }
  std::cout << report.grid.to_table();
  std::cerr << "grid written to " << report.grid_path << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transitive verb matrices: learn, compose, evaluate"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress warnings");

  BuildSpaceArgs bs;
  auto* c_bs = app.add_subcommand("build-space", "Build a reduced embedding space from a corpus");
  c_bs->add_option("--corpus", bs.corpus, "One sentence per line")->required();
  c_bs->add_option("--window", bs.window, "Symmetric window size")->capture_default_str();
  c_bs->add_option("--min-count", bs.min_count, "Minimum word frequency")->capture_default_str();
  c_bs->add_option("--max-contexts", bs.max_contexts, "Context vocabulary size (0 = all)")
      ->capture_default_str();
  c_bs->add_option("--dim", bs.dim, "K")->required();
  c_bs->add_option("--scaling", bs.scaling, "us or u")->capture_default_str();
  c_bs->add_option("--out", bs.out, "Output space file")->required();

  MakeDataArgs md;
  auto* c_md = app.add_subcommand("make-data", "Select positives and generate negatives per verb");
  c_md->add_option("--triples", md.triples, "TSV subject, verb, object, count")->required();
  c_md->add_option("--space", md.space)->required();
  c_md->add_option("--min-noun-freq", md.data.min_noun_freq)->capture_default_str();
  c_md->add_option("--top-n", md.data.top_n)->capture_default_str();
  c_md->add_option("--neg-n", md.data.neg_n)->capture_default_str();
  c_md->add_option("--freq-band", md.data.freq_band)->capture_default_str();
  c_md->add_option("--seed", md.seed)->capture_default_str();
  c_md->add_option("--out", md.out, "Output directory")->required();

  TrainArgs tr;
  auto* c_tr = app.add_subcommand("train", "Train verb matrices");
  c_tr->add_option("--regime", tr.regime, "dist, reg or reg+")->required();
  c_tr->add_option("--data", tr.data, "Directory from make-data")->required();
  c_tr->add_option("--space", tr.space)->required();
  c_tr->add_option("--lambda", tr.cfg.lambda)->capture_default_str();
  c_tr->add_option("--batch", tr.cfg.batch)->capture_default_str();
  c_tr->add_option("--max-epochs", tr.cfg.max_epochs)->capture_default_str();
  c_tr->add_option("--patience", tr.cfg.patience)->capture_default_str();
  c_tr->add_option("--rho", tr.cfg.rho)->capture_default_str();
  c_tr->add_option("--epsilon", tr.cfg.epsilon)->capture_default_str();
  c_tr->add_option("--loss", tr.loss, "xent or mse")->capture_default_str();
  c_tr->add_option("--seed", tr.seed)->capture_default_str();
  c_tr->add_option("--out", tr.out, "Output directory")->required();

  EvaluateArgs ev;
  auto* c_ev = app.add_subcommand("evaluate", "Score a paired-sentence dataset");
  c_ev->add_option("--dataset", ev.dataset)->required();
  c_ev->add_option("--format", ev.format, "gs2011, ks2013 or canonical")->capture_default_str();
  c_ev->add_option("--space", ev.space)->required();
  c_ev->add_option("--verbs", ev.verbs, "Directory of verb matrices");
  c_ev->add_option("--comp", ev.comp, "add, mult, co, cs, f+, re or vo")->required();
  c_ev->add_option("--regime", ev.regime, "Label recorded in the result")->capture_default_str();
  c_ev->add_option("--scale-min", ev.scale_min)->capture_default_str();
  c_ev->add_option("--scale-max", ev.scale_max)->capture_default_str();
  c_ev->add_flag("--per-annotator", ev.per_annotator);
  c_ev->add_flag("--normalize-inputs", ev.normalize_inputs);
  c_ev->add_flag("--normalized-frobenius", ev.normalized_frobenius);
  c_ev->add_option("--out", ev.out, "Result file (per-pair detail goes to <out>.pairs)");

  AnalyzeArgs an;
  auto* c_an = app.add_subcommand("analyze", "Per-pair squared-error comparison of two results");
  c_an->add_option("--a", an.a)->required();
  c_an->add_option("--b", an.b)->required();
  c_an->add_option("--out", an.out)->required();

  std::string run_config;
  auto* c_run = app.add_subcommand("run", "Run the full pipeline from a config file");
  c_run->add_option("--config", run_config)->required();

  std::string validate_path;
  auto* c_val = app.add_subcommand("validate", "Check a config file");
  c_val->add_option("--config", validate_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  set_warnings_quiet(quiet);

  try {
    if (*c_bs) return cmd_build_space(bs);
    if (*c_md) return cmd_make_data(md);
    if (*c_tr) return cmd_train(tr);
    if (*c_ev) {
      if (uses_verb_matrix(parse_comp(ev.comp)) && ev.verbs.empty()) {
        std::cerr << "error: --verbs is required for composition '" << ev.comp << "'\n";
        return kExitInvalid;
      }
      return cmd_evaluate(ev);
    }
    if (*c_an) return cmd_analyze(an);
    if (*c_val) return cmd_validate(validate_path);
    if (*c_run) return cmd_run(run_config);
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStage;
  }
  return kExitOk;
}
