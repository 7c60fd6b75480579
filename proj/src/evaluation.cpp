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

#include "svo/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <set>

namespace svo {

double EvalPair::gold_mean() const {
  if (ratings.empty()) throw Error("pair '" + id + "' has no ratings");
  return std::accumulate(ratings.begin(), ratings.end(), 0.0) /
         static_cast<double>(ratings.size());
}

DatasetFormat parse_format(std::string_view s) {
  if (s == "gs2011") return DatasetFormat::gs2011;
  if (s == "ks2013") return DatasetFormat::ks2013;
  if (s == "canonical") return DatasetFormat::canonical;
  throw Error("unknown dataset format '" + std::string(s) + "' (valid: gs2011, ks2013, canonical)");
}

std::string_view to_string(DatasetFormat f) {
  switch (f) {
    case DatasetFormat::gs2011: return "gs2011";
    case DatasetFormat::ks2013: return "ks2013";
    case DatasetFormat::canonical: return "canonical";
  }
  return "?";
}

namespace {

struct RawRow {
  std::string id;
  SVOTriple left;
  SVOTriple right;
  double rating;
};

// Returns nullopt for header lines.
std::optional<RawRow> parse_row(const std::string& line, DatasetFormat format,
                                const std::string& where) {
  RawRow r;
  std::string rating;
  if (format == DatasetFormat::canonical) {
    const auto c = split(line, '\t');
    if (c.size() != 9) throw Error(where + ": expected 9 tab-separated columns");
    if (c[0] == "pair_id") return std::nullopt;
    r.id = c[0];
    r.left = {c[1], c[2], c[3], 1};
    r.right = {c[4], c[5], c[6], 1};
    rating = c[8];
  } else if (format == DatasetFormat::gs2011) {
    // participant verb subject object landmark input [hilo]
    const auto c = split_ws(line);
    if (c.size() != 6 && c.size() != 7) throw Error(where + ": expected 6 or 7 columns");
    if (c[0] == "participant") return std::nullopt;
    r.left = {c[2], c[1], c[3], 1};
    r.right = {c[2], c[4], c[3], 1};
    r.id = c[1] + "-" + c[2] + "-" + c[3] + "-" + c[4];
    rating = c[5];
  } else {
    // annotator subject1 verb1 object1 subject2 verb2 object2 score
    const auto c = split_ws(line);
    if (c.size() != 8) throw Error(where + ": expected 8 columns");
    if (c[0] == "annotator") return std::nullopt;
    r.left = {c[1], c[2], c[3], 1};
    r.right = {c[4], c[5], c[6], 1};
    r.id = c[1] + "-" + c[2] + "-" + c[3] + "--" + c[4] + "-" + c[5] + "-" + c[6];
    rating = c[7];
  }
  for (const auto* t : {&r.left, &r.right}) {
    if (t->subject.empty() || t->verb.empty() || t->object.empty()) {
      throw Error(where + ": empty word");
    }
  }
  try {
    r.rating = parse_double(rating);
  } catch (const Error&) {
    throw Error(where + ": bad rating '" + rating + "'");
  }
  return r;
}

}  // namespace

std::vector<EvalPair> load_dataset(const std::string& path, DatasetFormat format,
                                   RatingScale scale) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset " + path);
  std::vector<EvalPair> pairs;
  std::map<std::string, std::size_t> index;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || line.front() == '#') continue;
    const std::string where = path + ":" + std::to_string(lineno);
    auto row = parse_row(line, format, where);
    if (!row) continue;
    if (!std::isfinite(row->rating) || row->rating < scale.min || row->rating > scale.max) {
      throw Error(where + ": rating " + format_double(row->rating) + " outside scale [" +
                  format_double(scale.min) + ", " + format_double(scale.max) + "]");
    }
    auto it = index.find(row->id);
    if (it == index.end()) {
      index.emplace(row->id, pairs.size());
      pairs.push_back({row->id, row->left, row->right, {row->rating}});
      continue;
    }
    EvalPair& p = pairs[it->second];
    if (!p.left.same_words(row->left) || !p.right.same_words(row->right)) {
      throw Error(where + ": pair id '" + row->id + "' reused with different triples");
    }
    p.ratings.push_back(row->rating);
  }
  if (pairs.empty()) throw Error(path + ": no pairs");
  return pairs;
}

namespace {

std::optional<double> score_one(const EvalPair& p, const EmbeddingSpace& space,
                                const VerbMatrices& verbs, CompMethod method,
                                const CompositionOptions& opts) {
  const bool needs_matrix = uses_verb_matrix(method);
  for (const auto* t : {&p.left, &p.right}) {
    if (!space.contains(t->subject) || !space.contains(t->object)) return std::nullopt;
    if (needs_matrix ? !verbs.count(t->verb) : !space.contains(t->verb)) return std::nullopt;
  }
  auto side = [&](const SVOTriple& t) {
    const Mat* vm = needs_matrix ? &verbs.at(t.verb).v : nullptr;
    const Vec* vv = needs_matrix ? nullptr : &space.vector_of(t.verb);
    return compose(method, space.vector_of(t.subject), space.vector_of(t.object), vm, vv, opts);
  };
  return similarity(side(p.left), side(p.right), opts);
}

}  // namespace

PairScores score_pairs(std::span<const EvalPair> pairs, const EmbeddingSpace& space,
                       const VerbMatrices& verbs, CompMethod method,
                       const CompositionOptions& opts, kernels::Exec exec) {
  const auto n = static_cast<long>(pairs.size());
  std::vector<std::optional<double>> results(pairs.size());
  std::vector<std::string> errors(pairs.size());

  if (exec == kernels::Exec::serial) {
    for (long i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      results[u] = score_one(pairs[u], space, verbs, method, opts);
    }
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      try {
        results[u] = score_one(pairs[u], space, verbs, method, opts);
      } catch (const std::exception& e) {
        errors[u] = e.what();
      }
    }
    for (std::size_t i = 0; i < errors.size(); ++i) {
      if (!errors[i].empty()) throw Error("pair '" + pairs[i].id + "': " + errors[i]);
    }
  }

  PairScores out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (results[i]) out.scores.emplace_back(pairs[i].id, *results[i]);
    else out.skipped.push_back(pairs[i].id);
  }
  if (out.scores.empty()) throw Error("no scorable pairs");
  return out;
}

std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    // positions i..j (0-based) share rank mean((i+1)..(j+1))
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error("spearman: lists differ in length");
  if (xs.size() < 3) throw Error("spearman: need at least 3 points");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double n = static_cast<double>(rx.size());
  const double mean = (n + 1.0) / 2.0;  // mean of average ranks is always (n+1)/2
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error("degenerate ranking");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> min_max_normalize(std::span<const double> xs, std::string_view what) {
  if (xs.empty()) throw Error("cannot normalize empty " + std::string(what));
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  const double min = *lo;
  const double range = *hi - *lo;
  if (!(range > 0.0)) throw Error("constant " + std::string(what) + "; normalization undefined");
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back((x - min) / range);
  return out;
}

EvalResult evaluate(std::span<const EvalPair> dataset, const EmbeddingSpace& space,
                    const VerbMatrices& verbs, CompMethod method, const EvalConfig& config,
                    const EvaluateOptions& opts) {
  const PairScores scored = score_pairs(dataset, space, verbs, method, opts.composition, opts.exec);
  std::map<std::string, const EvalPair*> by_id;
  for (const auto& p : dataset) by_id.emplace(p.id, &p);

  EvalResult r;
  r.config = config;
  r.skipped = scored.skipped;
  std::vector<double> sys;
  std::vector<double> gold;
  std::vector<double> xs_ann;
  std::vector<double> ys_ann;
  for (const auto& [id, score] : scored.scores) {
    const EvalPair& p = *by_id.at(id);
    sys.push_back(score);
    gold.push_back(p.gold_mean());
    for (double rating : p.ratings) {
      xs_ann.push_back(score);
      ys_ann.push_back(rating);
    }
    r.per_pair.push_back({id, score, gold.back(), 0.0, 0.0, 0.0});
  }
  r.rho = opts.per_annotator ? spearman(xs_ann, ys_ann) : spearman(sys, gold);

  try {
    const auto ns = min_max_normalize(sys, "system scores");
    const auto ng = min_max_normalize(gold, "gold scores");
    for (std::size_t i = 0; i < r.per_pair.size(); ++i) {
      auto& pp = r.per_pair[i];
      pp.norm_system = ns[i];
      pp.norm_gold = ng[i];
      pp.msqe = (ns[i] - ng[i]) * (ns[i] - ng[i]);
    }
  } catch (const Error& e) {
    warn(std::string("per-pair normalization skipped: ") + e.what());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (auto& pp : r.per_pair) pp.norm_system = pp.norm_gold = pp.msqe = nan;
  }
  return r;
}

std::vector<MsqeRow> msqe_analysis(const EvalResult& a, const EvalResult& b) {
  if (a.per_pair.size() != b.per_pair.size()) {
    throw Error("results cover different pair sets (" + std::to_string(a.per_pair.size()) +
                " vs " + std::to_string(b.per_pair.size()) + " pairs)");
  }
  std::map<std::string, std::size_t> b_index;
  for (std::size_t i = 0; i < b.per_pair.size(); ++i) b_index.emplace(b.per_pair[i].id, i);

  std::vector<double> sys_a, sys_b, gold;
  for (const auto& pa : a.per_pair) {
    auto it = b_index.find(pa.id);
    if (it == b_index.end()) throw Error("pair '" + pa.id + "' missing from second result");
    const auto& pb = b.per_pair[it->second];
    if (pa.gold_mean != pb.gold_mean) throw Error("pair '" + pa.id + "' has different gold");
    sys_a.push_back(pa.system);
    sys_b.push_back(pb.system);
    gold.push_back(pa.gold_mean);
  }
  const auto ng = min_max_normalize(gold, "gold scores");
  const auto na = min_max_normalize(sys_a, "system scores of result A");
  const auto nb = min_max_normalize(sys_b, "system scores of result B");

  std::vector<MsqeRow> rows;
  rows.reserve(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    MsqeRow row;
    row.id = a.per_pair[i].id;
    row.norm_gold = ng[i];
    row.norm_a = na[i];
    row.norm_b = nb[i];
    row.error_a = (na[i] - ng[i]) * (na[i] - ng[i]);
    row.error_b = (nb[i] - ng[i]) * (nb[i] - ng[i]);
    row.diff = row.error_a - row.error_b;
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const MsqeRow& x, const MsqeRow& y) {
    if (x.diff != y.diff) return x.diff < y.diff;
    return x.id < y.id;
  });
  return rows;
}

void write_result(const EvalResult& r, const std::string& path,
                  const std::vector<std::string>& metadata) {
  {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    for (const auto& m : metadata) out << "# " << m << '\n';
    out << "regime\tcomposition\tK\trho\tn_pairs\tn_skipped\n";
    out << r.config.regime << '\t' << r.config.composition << '\t' << r.config.k << '\t'
        << format_double(r.rho) << '\t' << r.per_pair.size() << '\t' << r.skipped.size() << '\n';
  }
  std::ofstream out(path + ".pairs");
  if (!out) throw Error("cannot write " + path + ".pairs");
  out << "pair_id\tsystem\tgold_mean\tnorm_system\tnorm_gold\tmsqe\n";
  for (const auto& p : r.per_pair) {
    out << p.id << '\t' << format_double(p.system) << '\t' << format_double(p.gold_mean) << '\t'
        << format_double(p.norm_system) << '\t' << format_double(p.norm_gold) << '\t'
        << format_double(p.msqe) << '\n';
  }
  for (const auto& s : r.skipped) out << "# skipped\t" << s << '\n';
}

namespace {
double parse_field(const std::string& s) {
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  return parse_double(s);
}
}  // namespace

EvalResult read_result(const std::string& path) {
  EvalResult r;
  {
    std::ifstream in(path);
    if (!in) throw Error("cannot open result " + path);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
      if (trim(line).empty() || line.front() == '#') continue;
      const auto c = split(line, '\t');
      if (c.size() != 6) throw Error(path + ": expected 6 columns");
      if (!header) {
        header = true;
        continue;
      }
      r.config = {c[0], c[1], static_cast<int>(parse_int(c[2]))};
      r.rho = parse_double(c[3]);
    }
  }
  std::ifstream in(path + ".pairs");
  if (!in) throw Error("cannot open " + path + ".pairs");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto c = split(line, '\t');
    if (line.front() == '#') {
      if (c.size() == 2 && c[0] == "# skipped") r.skipped.push_back(c[1]);
      continue;
    }
    if (c.size() != 6) throw Error(path + ".pairs:" + std::to_string(lineno) + ": expected 6 columns");
    if (c[0] == "pair_id") continue;
    r.per_pair.push_back({c[0], parse_field(c[1]), parse_field(c[2]), parse_field(c[3]),
                          parse_field(c[4]), parse_field(c[5])});
  }
  return r;
}

void write_msqe_report(std::span<const MsqeRow> rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "pair_id\tnorm_gold\tnorm_a\tnorm_b\terror_a\terror_b\terror_a_minus_b\n";
  for (const auto& r : rows) {
    out << r.id << '\t' << format_double(r.norm_gold) << '\t' << format_double(r.norm_a) << '\t'
        << format_double(r.norm_b) << '\t' << format_double(r.error_a) << '\t'
        << format_double(r.error_b) << '\t' << format_double(r.diff) << '\n';
  }
}

}  // namespace svo
