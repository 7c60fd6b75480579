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

#include "svo/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "svo/composition.hpp"
#include "svo/evaluation.hpp"

namespace svo {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> parse_list(const std::string& v) {
  std::vector<std::string> out;
  for (const auto& item : split(v, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::string resolve(const std::string& base, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base) / p).lexically_normal().string();
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error("expected true/false, got '" + v + "'");
}

}  // namespace

std::uint64_t PipelineConfig::hash() const {
  std::ostringstream s;
  s << "corpus=" << corpus << "\nwindow=" << window << "\nmin_count=" << min_count
    << "\nmax_contexts=" << max_contexts << "\nsvd_scaling=" << svd_scaling << "\ndims=";
  for (int d : dims) s << d << ',';
  s << "\ntriples=" << triples << "\nmin_noun_freq=" << data.min_noun_freq
    << "\ntop_n=" << data.top_n << "\nneg_n=" << data.neg_n
    << "\nfreq_band=" << format_double(data.freq_band) << "\nregimes=";
  for (const auto& r : regimes) s << r << ',';
  const auto& rc = regression;
  s << "\nlambda=" << format_double(rc.lambda) << "\nrho=" << format_double(rc.rho)
    << "\nepsilon=" << format_double(rc.epsilon) << "\nmax_epochs=" << rc.max_epochs
    << "\npatience=" << rc.patience << "\nbatch=" << rc.batch << "\nloss=" << to_string(rc.loss)
    << "\nvalidation_fraction=" << format_double(rc.validation_fraction) << "\ncompositions=";
  for (const auto& c : compositions) s << c << ',';
  s << "\ndatasets=";
  for (const auto& d : datasets) s << d.name << ':' << d.format << ':' << d.path << ',';
  s << "\nscale=" << format_double(scale_min) << ',' << format_double(scale_max)
    << "\nnormalize_inputs=" << normalize_inputs
    << "\nnormalized_frobenius=" << normalized_frobenius << "\nper_annotator=" << per_annotator
    << "\nseed=" << seed << '\n';
  return fnv1a(s.str());
}

PipelineConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  PipelineConfig c;
  bool datasets_seen = false;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    const std::string where = "config line " + std::to_string(lineno);
    if (eq == std::string_view::npos) throw Error(where + ": expected 'key = value'");
    const std::string key(trim(t.substr(0, eq)));
    const std::string val(trim(t.substr(eq + 1)));
    try {
      if (key == "corpus") c.corpus = resolve(base_dir, val);
      else if (key == "window") c.window = static_cast<int>(parse_int(val));
      else if (key == "min_count") c.min_count = static_cast<std::uint64_t>(parse_int(val));
      else if (key == "max_contexts") c.max_contexts = static_cast<std::size_t>(parse_int(val));
      else if (key == "svd_scaling") c.svd_scaling = val;
      else if (key == "dims") {
        c.dims.clear();
        for (const auto& d : parse_list(val)) c.dims.push_back(static_cast<int>(parse_int(d)));
      } else if (key == "triples") c.triples = resolve(base_dir, val);
      else if (key == "min_noun_freq") c.data.min_noun_freq = static_cast<std::uint64_t>(parse_int(val));
      else if (key == "top_n") c.data.top_n = static_cast<std::size_t>(parse_int(val));
      else if (key == "neg_n") c.data.neg_n = static_cast<std::size_t>(parse_int(val));
      else if (key == "freq_band") c.data.freq_band = parse_double(val);
      else if (key == "regimes") c.regimes = parse_list(val);
      else if (key == "lambda") c.regression.lambda = parse_double(val);
      else if (key == "rho") c.regression.rho = parse_double(val);
      else if (key == "epsilon") c.regression.epsilon = parse_double(val);
      else if (key == "max_epochs") c.regression.max_epochs = static_cast<int>(parse_int(val));
      else if (key == "patience") c.regression.patience = static_cast<int>(parse_int(val));
      else if (key == "batch") c.regression.batch = static_cast<std::size_t>(parse_int(val));
      else if (key == "loss") c.regression.loss = parse_loss(val);
      else if (key == "validation_fraction") c.regression.validation_fraction = parse_double(val);
      else if (key == "compositions") c.compositions = parse_list(val);
      else if (key == "dataset") {
        // name:format:path
        const auto first = val.find(':');
        const auto second = first == std::string::npos ? first : val.find(':', first + 1);
        if (second == std::string::npos) throw Error("dataset must be 'name:format:path'");
        if (!datasets_seen) c.datasets.clear();
        datasets_seen = true;
        c.datasets.push_back({val.substr(0, first), val.substr(first + 1, second - first - 1),
                              resolve(base_dir, val.substr(second + 1))});
      } else if (key == "scale_min") c.scale_min = parse_double(val);
      else if (key == "scale_max") c.scale_max = parse_double(val);
      else if (key == "normalize_inputs") c.normalize_inputs = parse_bool(val);
      else if (key == "normalized_frobenius") c.normalized_frobenius = parse_bool(val);
      else if (key == "per_annotator") c.per_annotator = parse_bool(val);
      else if (key == "seed") c.seed = static_cast<std::uint64_t>(parse_int(val));
      else if (key == "output") c.output = resolve(base_dir, val);
      else throw Error("unknown key '" + key + "'");
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
  }
  return c;
}

PipelineConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto base = fs::path(path).parent_path().string();
  return parse_config_text(ss.str(), base.empty() ? "." : base);
}

std::vector<std::string> validate_config(const PipelineConfig& c) {
  std::vector<std::string> v;
  auto need_file = [&](const std::string& what, const std::string& p) {
    if (p.empty()) v.push_back(what + " path is not set");
    else if (!fs::is_regular_file(p)) v.push_back(what + " not found: " + p);
  };
  need_file("corpus", c.corpus);
  need_file("triples", c.triples);
  if (c.window < 1) v.push_back("window must be >= 1");
  if (c.min_count < 1) v.push_back("min_count must be >= 1");
  if (c.svd_scaling != "us" && c.svd_scaling != "u") {
    v.push_back("svd_scaling must be 'us' or 'u', got '" + c.svd_scaling + "'");
  }
  if (c.dims.empty()) v.push_back("dims must not be empty");
  for (int d : c.dims) {
    if (d <= 0) {
      v.push_back("dims must be positive");
      break;
    }
  }
  if (c.data.top_n < 1) v.push_back("top_n must be >= 1");
  if (c.data.neg_n < 1) v.push_back("neg_n must be >= 1");
  if (!(c.data.freq_band > 0.0)) v.push_back("freq_band must be > 0");

  if (c.regimes.empty()) v.push_back("regimes must not be empty");
  for (const auto& r : c.regimes) {
    try {
      parse_regime(r);
    } catch (const Error&) {
      v.push_back("unknown regime '" + r + "' (valid: dist, reg, reg+)");
    }
  }
  try {
    c.regression.validate();
  } catch (const Error& e) {
    v.push_back(e.what());
  }

  if (c.compositions.empty()) v.push_back("compositions must not be empty");
  for (const auto& k : c.compositions) {
    if (std::find(comp_keys().begin(), comp_keys().end(), k) == comp_keys().end()) {
      v.push_back("unknown composition key '" + k + "' (valid: add, mult, co, cs, f+, re, vo)");
    }
  }
  if (c.datasets.empty()) v.push_back("at least one dataset is required");
  std::set<std::string> names;
  for (const auto& d : c.datasets) {
    if (!names.insert(d.name).second) v.push_back("duplicate dataset name '" + d.name + "'");
    try {
      parse_format(d.format);
    } catch (const Error& e) {
      v.push_back(e.what());
    }
    need_file("dataset '" + d.name + "'", d.path);
  }
  if (!(c.scale_min < c.scale_max)) v.push_back("scale_min must be below scale_max");
  if (c.output.empty()) v.push_back("output directory is not set");
  return v;
}

}  // namespace svo
